"""Tests for game tool functions."""

from pathlib import Path

import pytest

from pilot_clustering.game.models import (
    CoalitionStructure,
    GameExhaustiveInput,
    GameFormInput,
    GameStableCheckInput,
)
from pilot_clustering.game.service import dump_structure, load_structure, load_trace
from pilot_clustering.game.tools import game_exhaustive, game_form, game_stable_check


@pytest.fixture
def singletons_file(tmp_path: Path) -> Path:
    path = tmp_path / "singletons.txt"
    path.write_text(dump_structure(CoalitionStructure.singletons(2)), encoding="utf-8")
    return path


@pytest.fixture
def grand_file(tmp_path: Path) -> Path:
    path = tmp_path / "grand.txt"
    path.write_text(dump_structure(CoalitionStructure.grand(2)), encoding="utf-8")
    return path


class TestGameForm:
    """Test suite for game_form function."""

    @pytest.mark.asyncio
    async def test_success(self, table_file: Path, tmp_path: Path) -> None:
        """Test formation runs and writes a replayable trace."""
        out = tmp_path / "trace.txt"
        result = await game_form(
            GameFormInput(table_path=str(table_file), seed=3, out=str(out))
        )

        assert result.success is True
        assert result.trace.final == CoalitionStructure.grand(2)
        assert result.total_se == pytest.approx(2 * 47.847, rel=1e-3)
        trace = load_trace(out.read_text(encoding="utf-8"))
        assert trace == result.trace

    @pytest.mark.asyncio
    async def test_initial_labels(self, table_file: Path) -> None:
        """Test a custom starting structure is used."""
        result = await game_form(
            GameFormInput(table_path=str(table_file), initial_labels=[4, 4])
        )

        assert result.success is True
        assert result.trace.initial == CoalitionStructure.grand(2)
        assert result.trace.deviations == []

    @pytest.mark.asyncio
    async def test_initial_size_mismatch(self, table_file: Path) -> None:
        """Test a wrong-sized starting structure fails without raising."""
        result = await game_form(
            GameFormInput(table_path=str(table_file), initial_labels=[0, 1, 2])
        )

        assert result.success is False
        assert "Initial structure" in result.error

    @pytest.mark.asyncio
    async def test_missing_table(self, tmp_path: Path) -> None:
        """Test a missing table is reported."""
        result = await game_form(GameFormInput(table_path=str(tmp_path / "none.txt")))

        assert result.success is False


class TestGameExhaustive:
    """Test suite for game_exhaustive function."""

    @pytest.mark.asyncio
    async def test_success(self, table_file: Path, tmp_path: Path) -> None:
        """Test the optimum is found and written."""
        out = tmp_path / "best.txt"
        result = await game_exhaustive(
            GameExhaustiveInput(
                table_path=str(table_file), objective="per-cell-mean", out=str(out)
            )
        )

        assert result.success is True
        assert result.structure == CoalitionStructure.grand(2)
        assert result.partitions == 2
        assert result.value == pytest.approx(47.847, rel=1e-3)
        assert result.total_se == pytest.approx(2 * result.value)
        assert load_structure(out.read_text(encoding="utf-8")) == result.structure


class TestGameStableCheck:
    """Test suite for game_stable_check function."""

    @pytest.mark.asyncio
    async def test_stable(self, table_file: Path, grand_file: Path) -> None:
        """Test the grand coalition of a distant pair is stable."""
        result = await game_stable_check(
            GameStableCheckInput(
                table_path=str(table_file), structure_path=str(grand_file)
            )
        )

        assert result.success is True
        assert result.stable is True
        assert result.blocking == []

    @pytest.mark.asyncio
    async def test_blocking(self, table_file: Path, singletons_file: Path) -> None:
        """Test blocking deviations are listed."""
        result = await game_stable_check(
            GameStableCheckInput(
                table_path=str(table_file), structure_path=str(singletons_file)
            )
        )

        assert result.success is True
        assert result.stable is False
        assert [(m.cell, m.target) for m in result.blocking] == [(0, [1]), (1, [0])]

    @pytest.mark.asyncio
    async def test_exhausted_counters(
        self, table_file: Path, singletons_file: Path
    ) -> None:
        """Test exhausted budgets make any structure stable."""
        result = await game_stable_check(
            GameStableCheckInput(
                table_path=str(table_file),
                structure_path=str(singletons_file),
                budget=0,
                eta=[1, 1],
            )
        )

        assert result.success is True
        assert result.stable is True

    @pytest.mark.asyncio
    async def test_counter_length(
        self, table_file: Path, singletons_file: Path
    ) -> None:
        """Test the counter vector must have one entry per cell."""
        result = await game_stable_check(
            GameStableCheckInput(
                table_path=str(table_file), structure_path=str(singletons_file), eta=[0]
            )
        )

        assert result.success is False
        assert "search counters" in result.error

"""Tests for spectral tool functions."""

from pathlib import Path

import pytest

from pilot_clustering.spectral.models import SpectralEvaluateInput, SpectralOracleInput
from pilot_clustering.spectral.tools import spectral_evaluate, spectral_oracle


class TestSpectralEvaluate:
    """Test suite for spectral_evaluate function."""

    @pytest.mark.asyncio
    async def test_success(self, table_file: Path) -> None:
        """Test per-cell utilities for the grand coalition."""
        result = await spectral_evaluate(
            SpectralEvaluateInput(table_path=str(table_file), labels=[0, 0])
        )

        assert result.success is True
        assert result.utilities == pytest.approx([47.847, 47.847], rel=1e-3)
        assert result.total_se == pytest.approx(sum(result.utilities))
        assert all(value is not None for value in result.interference)

    @pytest.mark.asyncio
    async def test_arbitrary_labels(self, table_file: Path) -> None:
        """Test labels need not be canonical."""
        result = await spectral_evaluate(
            SpectralEvaluateInput(table_path=str(table_file), labels=[5, 2])
        )

        assert result.success is True
        assert result.utilities == pytest.approx([32.163, 32.163], rel=1e-3)

    @pytest.mark.asyncio
    async def test_infeasible_zero_forcing(self, table_file: Path) -> None:
        """Test infeasible cells report null interference and zero SE."""
        result = await spectral_evaluate(
            SpectralEvaluateInput(
                table_path=str(table_file), labels=[0, 0], antennas=20, scheme="zfc"
            )
        )

        assert result.success is True
        assert result.interference == [None, None]
        assert result.utilities == [0.0, 0.0]

    @pytest.mark.asyncio
    async def test_size_mismatch(self, table_file: Path) -> None:
        """Test a structure of the wrong size fails without raising."""
        result = await spectral_evaluate(
            SpectralEvaluateInput(table_path=str(table_file), labels=[0, 1, 2])
        )

        assert result.success is False
        assert "Size mismatch" in result.error

    @pytest.mark.asyncio
    async def test_missing_table(self, tmp_path: Path) -> None:
        """Test a missing table file is reported."""
        result = await spectral_evaluate(
            SpectralEvaluateInput(table_path=str(tmp_path / "none.txt"), labels=[0])
        )

        assert result.success is False


class TestSpectralOracle:
    """Test suite for spectral_oracle function."""

    @pytest.mark.asyncio
    async def test_success(self, deployment_file: Path, table_file: Path) -> None:
        """Test the oracle runs and reports the closed form alongside."""
        result = await spectral_oracle(
            SpectralOracleInput(
                deployment_path=str(deployment_file),
                table_path=str(table_file),
                labels=[0, 1],
                cell=1,
                trials=20,
            )
        )

        assert result.success is True
        assert result.estimate.trials == 20
        assert result.estimate.mean > 0
        assert result.closed_form == pytest.approx(32.163, rel=1e-3)

    @pytest.mark.asyncio
    async def test_without_table(self, deployment_file: Path) -> None:
        """Test the closed form is omitted without a table."""
        result = await spectral_oracle(
            SpectralOracleInput(
                deployment_path=str(deployment_file), labels=[0, 0], cell=0, trials=5
            )
        )

        assert result.success is True
        assert result.closed_form is None

    @pytest.mark.asyncio
    async def test_bad_cell(self, deployment_file: Path) -> None:
        """Test an out-of-range cell fails without raising."""
        result = await spectral_oracle(
            SpectralOracleInput(
                deployment_path=str(deployment_file), labels=[0, 0], cell=2
            )
        )

        assert result.success is False
        assert "outside" in result.error

"""Tests for harness tool functions."""

from pathlib import Path
from unittest.mock import patch

import pytest

from pilot_clustering.harness.models import HarnessSweepInput
from pilot_clustering.harness.service import records_from_csv
from pilot_clustering.harness.tools import harness_sweep

SMALL = {
    "cells": 3,
    "antennas": "100,200",
    "schemes": "mrc",
    "methods": "formation,singletons",
    "trials": 2,
    "mu_samples": 200,
}


class TestHarnessSweep:
    """Test suite for harness_sweep function."""

    @pytest.mark.asyncio
    async def test_success(self, tmp_path: Path) -> None:
        """Test a sweep writes records and a summary."""
        out = tmp_path / "records.csv"
        summary_out = tmp_path / "summary.csv"
        with patch.dict("os.environ", {}, clear=True):
            result = await harness_sweep(
                HarnessSweepInput(
                    overrides=SMALL,
                    out=str(out),
                    summary_out=str(summary_out),
                    workers=1,
                )
            )

        assert result.success is True
        assert result.records == 2 * 2 * 2
        assert len(result.summary) == 4
        assert all(row.trials == 2 for row in result.summary)
        assert len(records_from_csv(out.read_text(encoding="utf-8"))) == 8
        summary = summary_out.read_text(encoding="utf-8")
        assert summary.startswith("antennas,scheme,method")

    @pytest.mark.asyncio
    async def test_config_file(self, tmp_path: Path) -> None:
        """Test a key=value config file is read."""
        path = tmp_path / "experiment.cfg"
        path.write_text(
            "cells=2\nantennas=100\nschemes=zfc\nmethods=grand\n"
            "trials=1\nmu_samples=100\n",
            encoding="utf-8",
        )
        with patch.dict("os.environ", {}, clear=True):
            result = await harness_sweep(HarnessSweepInput(config_path=str(path)))

        assert result.success is True
        assert result.records == 1
        assert result.summary[0].mean_coalition_size == 2.0

    @pytest.mark.asyncio
    async def test_invalid_config(self) -> None:
        """Test configuration errors are reported."""
        with patch.dict("os.environ", {}, clear=True):
            result = await harness_sweep(HarnessSweepInput(overrides={"bogus": 1}))

        assert result.success is False
        assert "bogus" in result.error

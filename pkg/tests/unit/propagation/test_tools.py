"""Tests for propagation tool functions."""

from pathlib import Path

import pytest

from pilot_clustering.propagation.models import PropagationEstimateInput
from pilot_clustering.propagation.service import load_table
from pilot_clustering.propagation.tools import propagation_estimate


class TestPropagationEstimate:
    """Test suite for propagation_estimate function."""

    @pytest.mark.asyncio
    async def test_success(self, deployment_file: Path, tmp_path: Path) -> None:
        """Test a table is estimated and written."""
        out = tmp_path / "table.txt"
        result = await propagation_estimate(
            PropagationEstimateInput(
                deployment_path=str(deployment_file),
                samples_per_cell=200,
                seed=1,
                out=str(out),
            )
        )

        assert result.success is True
        assert result.mu1[0][0] == 1.0
        assert len(result.mu2) == 2
        assert result.path == str(out)
        table = load_table(out.read_text(encoding="utf-8"))
        assert table.mu1.tolist() == result.mu1
        assert table.deployment_sha256 == result.deployment_sha256

    @pytest.mark.asyncio
    async def test_missing_deployment(self, tmp_path: Path) -> None:
        """Test a missing deployment file fails without raising."""
        result = await propagation_estimate(
            PropagationEstimateInput(deployment_path=str(tmp_path / "none.txt"))
        )

        assert result.success is False
        assert result.error

    @pytest.mark.asyncio
    async def test_malformed_deployment(self, tmp_path: Path) -> None:
        """Test a malformed deployment record is reported."""
        path = tmp_path / "bad.txt"
        path.write_text("# structure\n0 1\n", encoding="utf-8")
        result = await propagation_estimate(
            PropagationEstimateInput(deployment_path=str(path))
        )

        assert result.success is False
        assert "deployment" in result.error

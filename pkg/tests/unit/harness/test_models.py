"""Tests for harness models."""

from unittest.mock import patch

import pytest
from pydantic import ValidationError

from pilot_clustering.game.models import Objective
from pilot_clustering.harness.models import ExperimentConfig, Method, ResultRecord
from pilot_clustering.spectral.models import Scheme


class TestExperimentConfig:
    """Test experiment configuration defaults and parsing."""

    def test_defaults(self) -> None:
        """Test the reference defaults."""
        with patch.dict("os.environ", {}, clear=True):
            config = ExperimentConfig()
        assert config.cells == 7
        assert config.antennas == [100, 200, 300, 400, 500]
        assert config.schemes == [Scheme.MRC, Scheme.ZFC]
        assert config.methods == list(Method)
        assert config.budget == 100
        assert config.objective is Objective.TOTAL_SE
        assert config.pilots == 70
        assert config.timing is False

    def test_environment_lists(self) -> None:
        """Test comma-separated lists from the environment."""
        env = {
            "PILOT_EXPERIMENT_ANTENNAS": "100, 300",
            "PILOT_EXPERIMENT_SCHEMES": "zfc",
            "PILOT_EXPERIMENT_METHODS": "formation,grand",
            "PILOT_EXPERIMENT_TRIALS": "3",
        }
        with patch.dict("os.environ", env, clear=True):
            config = ExperimentConfig()
        assert config.antennas == [100, 300]
        assert config.schemes == [Scheme.ZFC]
        assert config.methods == [Method.FORMATION, Method.GRAND]
        assert config.trials == 3

    def test_system_params(self) -> None:
        """Test the radio parameters of one sweep point."""
        with patch.dict("os.environ", {}, clear=True):
            params = ExperimentConfig(cells=3).system_params(200)
        assert (params.antennas, params.pilots, params.cells) == (200, 30, 3)
        assert params.snr == pytest.approx(10**0.5)

    @pytest.mark.parametrize(
        "values",
        [
            {"cells": 40},
            {"antennas": "100,0"},
            {"antennas": ""},
            {"methods": "formation,best"},
            {"bogus": 1},
            {"trials": 0},
        ],
    )
    def test_invalid(self, values: dict) -> None:
        """Test invalid configurations are rejected."""
        with patch.dict("os.environ", {}, clear=True), pytest.raises(ValidationError):
            ExperimentConfig(**values)

    def test_frozen(self) -> None:
        """Test configs are immutable."""
        with patch.dict("os.environ", {}, clear=True):
            config = ExperimentConfig()
        with pytest.raises(ValidationError):
            config.trials = 5  # type: ignore[misc]


class TestResultRecord:
    """Test result record validation."""

    def _values(self, **overrides: object) -> dict:
        return {
            "trial": 0,
            "antennas": 100,
            "scheme": "mrc",
            "method": "formation",
            "mean_se": 30.0,
            "total_se": 210.0,
            "mean_coalition_size": 1.75,
            "mean_searches": 2.0,
            "deviations": 5,
            "stable": True,
            **overrides,
        }

    def test_valid(self) -> None:
        """Test a formation record."""
        record = ResultRecord(**self._values())
        assert record.method is Method.FORMATION
        assert record.wall_time is None

    def test_formation_must_be_stable(self) -> None:
        """Test an unstable formation record is rejected."""
        with pytest.raises(ValidationError, match="individually stable"):
            ResultRecord(**self._values(stable=False))

    def test_baselines_may_be_unstable(self) -> None:
        """Test baseline records may carry stable=False."""
        record = ResultRecord(**self._values(method="singletons", stable=False))
        assert record.stable is False

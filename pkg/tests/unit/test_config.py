"""Unit tests for configuration management."""

from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from pilot_clustering._core.config import (
    SimulatorSettings,
    clear_config_cache,
    get_settings,
    read_key_value_file,
)
from pilot_clustering._core.exceptions import ConfigurationError


class TestSimulatorSettings:
    """Test ambient simulator settings."""

    def test_defaults(self) -> None:
        """Test default values without environment variables."""
        with patch.dict("os.environ", {}, clear=True):
            settings = SimulatorSettings()
        assert settings.log_level == "INFO"
        assert settings.workers == 1
        assert settings.max_rejections == 1_000_000
        assert settings.utility_cache_size == 4096

    def test_values_from_env(self) -> None:
        """Test PILOT_-prefixed environment variables are picked up."""
        with patch.dict(
            "os.environ",
            {"PILOT_WORKERS": "4", "PILOT_MAX_REJECTIONS": "500"},
            clear=True,
        ):
            settings = SimulatorSettings()
        assert settings.workers == 4
        assert settings.max_rejections == 500

    def test_invalid_workers_raises_error(self) -> None:
        """Test a non-positive worker count is rejected."""
        with patch.dict("os.environ", {"PILOT_WORKERS": "0"}, clear=True):
            with pytest.raises(ValidationError, match="workers"):
                SimulatorSettings()

    def test_log_level_is_normalised(self) -> None:
        """Test a lower-case level from the environment is accepted."""
        with patch.dict("os.environ", {"PILOT_LOG_LEVEL": "debug"}, clear=True):
            assert SimulatorSettings().log_level == "DEBUG"

    def test_unknown_log_level_raises_error(self) -> None:
        """Test a level the logging module does not know is rejected."""
        with patch.dict("os.environ", {"PILOT_LOG_LEVEL": "LOUD"}, clear=True):
            with pytest.raises(ValidationError, match="log_level"):
                SimulatorSettings()


class TestSettingsCaching:
    """Test cached settings access."""

    def test_get_settings_is_cached(self) -> None:
        """Test repeated calls return the same instance."""
        assert get_settings() is get_settings()

    def test_clear_config_cache(self) -> None:
        """Test clearing the cache picks up new environment values."""
        with patch.dict("os.environ", {"PILOT_WORKERS": "2"}, clear=True):
            clear_config_cache()
            assert get_settings().workers == 2
        with patch.dict("os.environ", {"PILOT_WORKERS": "3"}, clear=True):
            assert get_settings().workers == 2
            clear_config_cache()
            assert get_settings().workers == 3


class TestReadKeyValueFile:
    """Test the flat key=value reader."""

    def test_reads_and_lowercases_keys(self, tmp_path: Path) -> None:
        """Test keys are lower-cased and values stripped."""
        path = tmp_path / "experiment.cfg"
        path.write_text(
            "# sweep\nCELLS=7\nantennas = 100,300\n\nschemes=mrc\n", encoding="utf-8"
        )
        assert read_key_value_file(path) == {
            "cells": "7",
            "antennas": "100,300",
            "schemes": "mrc",
        }

    def test_missing_file_raises_error(self, tmp_path: Path) -> None:
        """Test a missing file raises ConfigurationError."""
        with pytest.raises(ConfigurationError, match="not found"):
            read_key_value_file(tmp_path / "nope.cfg")

    def test_key_without_value_raises_error(self, tmp_path: Path) -> None:
        """Test a bare key is reported instead of silently ignored."""
        path = tmp_path / "experiment.cfg"
        path.write_text("cells=7\ntrials\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="trials"):
            read_key_value_file(path)

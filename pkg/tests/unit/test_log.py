"""Unit tests for logging setup."""

import logging
from collections.abc import Iterator

import pytest

from pilot_clustering._core.log import LOG_FORMAT, configure_logging


@pytest.fixture
def package_logger() -> Iterator[logging.Logger]:
    logger = logging.getLogger("pilot_clustering")
    saved_handlers, saved_level = list(logger.handlers), logger.level
    logger.handlers.clear()
    yield logger
    logger.handlers[:] = saved_handlers
    logger.setLevel(saved_level)


class TestConfigureLogging:
    """Test configure_logging."""

    def test_installs_one_handler(self, package_logger: logging.Logger) -> None:
        """Test a stream handler with the fixed format is installed."""
        configure_logging("debug")

        assert package_logger.level == logging.DEBUG
        assert len(package_logger.handlers) == 1
        handler = package_logger.handlers[0]
        assert isinstance(handler, logging.StreamHandler)
        assert handler.formatter is not None
        assert handler.formatter._fmt == LOG_FORMAT

    def test_repeated_calls_only_change_level(
        self, package_logger: logging.Logger
    ) -> None:
        """Test calling twice does not stack handlers."""
        configure_logging("INFO")
        configure_logging(logging.WARNING)

        assert len(package_logger.handlers) == 1
        assert package_logger.level == logging.WARNING

    def test_module_loggers_propagate(
        self, package_logger: logging.Logger, caplog: pytest.LogCaptureFixture
    ) -> None:
        """Test service loggers reach the package logger."""
        configure_logging("INFO")
        with caplog.at_level(logging.INFO, logger="pilot_clustering"):
            logging.getLogger("pilot_clustering.game.service").info("formed")

        assert "formed" in caplog.text

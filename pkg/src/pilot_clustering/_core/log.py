"""Logging setup shared by the CLI and long-running experiments."""

import logging

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


def configure_logging(level: str | int = "INFO") -> None:
    """Install a single stream handler on the package logger.

    Calling it again only changes the level, so repeated CLI invocations in
    one process (tests) never stack handlers.
    """
    logger = logging.getLogger("pilot_clustering")
    if isinstance(level, str):
        level = level.upper()
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)


__all__ = ["LOG_FORMAT", "LOG_LEVELS", "configure_logging"]

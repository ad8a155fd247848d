"""Exception hierarchy for the pilot clustering simulator.

This module defines typed exceptions for better error handling and
more informative error messages throughout the package.
"""


class PilotClusteringError(Exception):
    """Base exception for all simulator operations."""

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)


class ConfigurationError(PilotClusteringError):
    """Missing or invalid configuration.

    Raised when a config file, environment variable or CLI flag cannot be
    turned into a valid experiment configuration.
    """

    def __init__(self, message: str = "Invalid configuration") -> None:
        super().__init__(message)


class InvalidParameterError(PilotClusteringError):
    """A domain precondition was violated (e.g. zero cells, B mod L != 0)."""

    def __init__(self, message: str = "Invalid parameter") -> None:
        super().__init__(message)


class DegenerateCellError(PilotClusteringError):
    """Rejection sampling exhausted its budget inside one cell.

    Raised when a cell has (numerically) zero area outside the exclusion disc.
    """

    def __init__(
        self,
        message: str = "Cell has no sampleable area",
        cell: int | None = None,
    ) -> None:
        super().__init__(message)
        self.cell = cell


class InfeasibleCombiningError(PilotClusteringError):
    """Zero-forcing cannot serve the scheduled load (M <= K_j)."""

    def __init__(
        self,
        message: str = "Zero-forcing combining is infeasible",
        cell: int | None = None,
        antennas: int | None = None,
        scheduled: int | None = None,
    ) -> None:
        super().__init__(message)
        self.cell = cell
        self.antennas = antennas
        self.scheduled = scheduled


class InvalidDeviationError(PilotClusteringError):
    """The requested move is not a deviation of the given structure."""

    def __init__(self, message: str = "Invalid deviation") -> None:
        super().__init__(message)


class PartitionLimitError(PilotClusteringError):
    """Exhaustive partition search requested outside the supported sizes."""

    def __init__(
        self, message: str = "Partition enumeration limited to 1..12 cells"
    ) -> None:
        super().__init__(message)


class RecordFormatError(PilotClusteringError):
    """A plain-text record or CSV file could not be parsed."""

    def __init__(self, message: str = "Malformed record") -> None:
        super().__init__(message)


__all__ = [
    "PilotClusteringError",
    "ConfigurationError",
    "InvalidParameterError",
    "DegenerateCellError",
    "InfeasibleCombiningError",
    "InvalidDeviationError",
    "PartitionLimitError",
    "RecordFormatError",
]

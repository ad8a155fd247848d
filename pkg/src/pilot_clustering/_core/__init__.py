"""Core infrastructure for pilot_clustering.

This module contains the base protocols, registry, execution engine,
configuration, exceptions and plain-text codec shared by every category.
"""

from pilot_clustering._core.base import (
    CATEGORIES,
    Tool,
    ToolExecutionResult,
    ToolMetadata,
    create_tool_metadata,
    register_tool,
)
from pilot_clustering._core.config import (
    SimulatorSettings,
    clear_config_cache,
    get_settings,
    read_key_value_file,
)
from pilot_clustering._core.exceptions import (
    ConfigurationError,
    DegenerateCellError,
    InfeasibleCombiningError,
    InvalidDeviationError,
    InvalidParameterError,
    PartitionLimitError,
    PilotClusteringError,
    RecordFormatError,
)
from pilot_clustering._core.executor import execute_tool, validate_input
from pilot_clustering._core.log import configure_logging
from pilot_clustering._core.registry import ToolRegistry, get_registry

__all__ = [
    # Base
    "CATEGORIES",
    "Tool",
    "ToolMetadata",
    "ToolExecutionResult",
    "create_tool_metadata",
    "register_tool",
    # Registry
    "ToolRegistry",
    "get_registry",
    # Executor
    "execute_tool",
    "validate_input",
    # Config
    "SimulatorSettings",
    "get_settings",
    "clear_config_cache",
    "read_key_value_file",
    # Logging
    "configure_logging",
    # Exceptions
    "PilotClusteringError",
    "ConfigurationError",
    "InvalidParameterError",
    "DegenerateCellError",
    "InfeasibleCombiningError",
    "InvalidDeviationError",
    "PartitionLimitError",
    "RecordFormatError",
]

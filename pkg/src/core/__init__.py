"""Core configuration, constants and errors for the WFGCRI toolkit."""

from src.core.config import (
    # Config dataclasses
    IntegrationConfig,
    StudyConfig,
    VerifyConfig,
    ChaosConfig,
    RollingConfig,
    ToolkitConfig,
    # Config utilities
    load_config,
    save_config,
    config_to_dict,
    create_toolkit_config,
    get_default_config,
)
from src.core.errors import (
    WfgcriError,
    DomainError,
    ModelSpecError,
    IngestionError,
    IntegrationFailure,
    DivergenceError,
    ConditioningError,
    DegenerateInputError,
    UsageError,
)

__all__ = [
    # Config dataclasses
    "IntegrationConfig",
    "StudyConfig",
    "VerifyConfig",
    "ChaosConfig",
    "RollingConfig",
    "ToolkitConfig",
    # Config utilities
    "load_config",
    "save_config",
    "config_to_dict",
    "create_toolkit_config",
    "get_default_config",
    # Errors
    "WfgcriError",
    "DomainError",
    "ModelSpecError",
    "IngestionError",
    "IntegrationFailure",
    "DivergenceError",
    "ConditioningError",
    "DegenerateInputError",
    "UsageError",
]

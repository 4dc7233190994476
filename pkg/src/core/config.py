"""
Configuration management for the WFGCRI toolkit.

This module provides typed configuration dataclasses for quadrature,
Monte Carlo studies, theorem verification, chaotic maps and rolling-window
analyses, with support for loading from YAML or JSON files.

Usage:
    from src.core.config import (
        IntegrationConfig,
        StudyConfig,
        RollingConfig,
        load_config,
        create_toolkit_config,
    )

    # Load from file
    config = create_toolkit_config(load_config("wfgcri.yaml"))

    # Or use defaults
    integration = IntegrationConfig(rel_tol=1e-10)
"""

from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Union
import json
import logging

from src.core import constants as C
from src.core.errors import DomainError

logger = logging.getLogger(__name__)

# Try to import yaml, but make it optional
try:
    import yaml

    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False
    yaml = None


@dataclass
class IntegrationConfig:
    """Tolerances and limits for adaptive quadrature."""

    rel_tol: float = C.DEFAULT_REL_TOL
    abs_tol: float = C.DEFAULT_ABS_TOL
    sf_cut: float = C.DEFAULT_SF_CUT
    max_subdivisions: int = C.DEFAULT_MAX_SUBDIVISIONS

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.sf_cut > 0):
            raise DomainError(
                "integration tolerances must be strictly positive",
                rel_tol=self.rel_tol,
                abs_tol=self.abs_tol,
                sf_cut=self.sf_cut,
            )
        if self.rel_tol >= 1:
            raise DomainError("rel_tol must be < 1", rel_tol=self.rel_tol)
        if self.sf_cut >= 1:
            raise DomainError("sf_cut must be < 1", sf_cut=self.sf_cut)
        if self.max_subdivisions < 1:
            raise DomainError(
                "max_subdivisions must be >= 1", max_subdivisions=self.max_subdivisions
            )

    def tightened(self, factor: float = C.BOUND_RETRY_TIGHTEN) -> "IntegrationConfig":
        """Return a copy with both tolerances divided by ``factor``."""
        return replace(
            self,
            rel_tol=self.rel_tol / factor,
            abs_tol=self.abs_tol / factor,
            sf_cut=self.sf_cut / factor,
            max_subdivisions=int(self.max_subdivisions * 2),
        )


@dataclass
class StudyConfig:
    """Configuration for a Monte Carlo replication study."""

    scenario: str = "phr"  # or "two-sample"
    rate: float = C.PHR_STUDY_RATE
    alpha: float = C.PHR_STUDY_ALPHA
    true_rate: float = C.TWO_SAMPLE_TRUE_RATE
    ref_rate: float = C.TWO_SAMPLE_REF_RATE
    betas: List[float] = field(default_factory=lambda: list(C.PHR_STUDY_BETAS))
    sample_sizes: List[int] = field(default_factory=lambda: list(C.STUDY_SAMPLE_SIZES))
    replications: int = C.STUDY_REPLICATIONS
    seed: int = 0
    weight_exp: float = 1.0
    jobs: int = 1
    fixed_replication_seed: bool = False  # every replication reuses one stream

    def __post_init__(self) -> None:
        if self.scenario not in ("phr", "two-sample"):
            raise DomainError(f"unknown study scenario: {self.scenario}", scenario=self.scenario)
        if self.replications < 2:
            raise DomainError("replications must be >= 2", replications=self.replications)
        if not self.sample_sizes or any(n < 2 for n in self.sample_sizes):
            raise DomainError("all sample sizes must be >= 2", sample_sizes=self.sample_sizes)
        if not self.betas or any(b < 0 for b in self.betas):
            raise DomainError("betas must be a nonempty list of values >= 0", betas=self.betas)
        if min(self.rate, self.alpha, self.true_rate, self.ref_rate) <= 0:
            raise DomainError("rates and alpha must be > 0")
        if self.weight_exp < 0:
            raise DomainError("weight_exp must be >= 0", weight_exp=self.weight_exp)
        if self.jobs < 1:
            raise DomainError("jobs must be >= 1", jobs=self.jobs)


@dataclass
class VerifyConfig:
    """Configuration for randomized theorem checks."""

    configs: int = C.DEFAULT_SUITE_CONFIGS
    seed: int = 0
    margin_rel: float = C.BOUND_MARGIN_REL
    weight_exponents: List[float] = field(default_factory=lambda: list(C.SUITE_WEIGHT_EXPONENTS))
    beta_min: float = C.SUITE_BETA_RANGE[0]
    beta_max: float = C.SUITE_BETA_RANGE[1]

    def __post_init__(self) -> None:
        if self.configs < 1:
            raise DomainError("configs must be >= 1", configs=self.configs)
        if not self.margin_rel >= 0:
            raise DomainError("margin_rel must be >= 0", margin_rel=self.margin_rel)
        if not 0 < self.beta_min <= self.beta_max:
            raise DomainError("beta range must satisfy 0 < min <= max")


@dataclass
class ChaosConfig:
    """Defaults for chaotic-map trajectories and curves."""

    x0: float = C.CHAOS_X0
    n: int = C.CHAOS_LENGTH
    alpha: float = C.CHAOS_ALPHA
    burn_in: int = 0
    beta_min: float = C.CHAOS_BETA_STEP
    beta_max: float = 5.0
    beta_step: float = C.CHAOS_BETA_STEP

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError("trajectory length must be >= 2", n=self.n)
        if self.burn_in < 0:
            raise DomainError("burn_in must be >= 0", burn_in=self.burn_in)
        if self.alpha <= 0:
            raise DomainError("alpha must be > 0", alpha=self.alpha)


@dataclass
class RollingConfig:
    """Configuration for rolling-window WFGCRI on a return series."""

    window_len: int = C.ROLLING_WINDOW
    step: int = C.ROLLING_STEP
    betas: List[float] = field(default_factory=lambda: [round(0.01 * i, 2) for i in range(1, 201)])
    alphas: List[float] = field(default_factory=lambda: list(C.ROLLING_ALPHAS))
    per_window_shift: bool = False

    def __post_init__(self) -> None:
        if self.window_len < 2:
            raise DomainError("window_len must be >= 2", window_len=self.window_len)
        if self.step < 1:
            raise DomainError("step must be >= 1", step=self.step)
        if not self.betas or any(b <= 0 for b in self.betas):
            raise DomainError("betas must be a nonempty list of values > 0")
        if not self.alphas or any(a <= 0 for a in self.alphas):
            raise DomainError("alphas must be a nonempty list of values > 0")


@dataclass
class ToolkitConfig:
    """Complete toolkit configuration, one section per subsystem."""

    integration: IntegrationConfig = field(default_factory=IntegrationConfig)
    study: StudyConfig = field(default_factory=StudyConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    chaos: ChaosConfig = field(default_factory=ChaosConfig)
    rolling: RollingConfig = field(default_factory=RollingConfig)


def load_config(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load configuration from a YAML or JSON file.

    Args:
        path: Path to the configuration file

    Returns:
        Dictionary of configuration values

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: If the file format is not supported
    """
    path = Path(path)

    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    with open(path, "r") as f:
        if path.suffix in (".yaml", ".yml"):
            if not YAML_AVAILABLE:
                raise ImportError(
                    "PyYAML is required for YAML config files. Install with: pip install pyyaml"
                )
            data = yaml.safe_load(f)
        elif path.suffix == ".json":
            data = json.load(f)
        else:
            raise ValueError(f"Unsupported config file format: {path.suffix}")

    logger.debug(f"Loaded configuration from {path}")
    return data or {}


def save_config(config: Dict[str, Any], path: Union[str, Path]) -> None:
    """
    Save configuration to a YAML or JSON file.

    Args:
        config: Configuration dictionary
        path: Path to save the file
    """
    path = Path(path)

    with open(path, "w") as f:
        if path.suffix in (".yaml", ".yml"):
            if not YAML_AVAILABLE:
                raise ImportError(
                    "PyYAML is required for YAML config files. Install with: pip install pyyaml"
                )
            yaml.safe_dump(config, f, default_flow_style=False, sort_keys=False)
        elif path.suffix == ".json":
            json.dump(config, f, indent=2)
        else:
            raise ValueError(f"Unsupported config file format: {path.suffix}")


def config_to_dict(config: Any) -> Dict[str, Any]:
    """Convert a dataclass config to a dictionary."""
    return asdict(config)


def create_study_config(data: Dict[str, Any]) -> StudyConfig:
    """Create a StudyConfig from a dictionary."""
    return StudyConfig(**data)


def create_rolling_config(data: Dict[str, Any]) -> RollingConfig:
    """Create a RollingConfig from a dictionary."""
    return RollingConfig(**data)


def create_toolkit_config(data: Dict[str, Any]) -> ToolkitConfig:
    """Create a ToolkitConfig from a dictionary, rebuilding nested sections."""
    sections = {
        "integration": IntegrationConfig,
        "study": StudyConfig,
        "verify": VerifyConfig,
        "chaos": ChaosConfig,
        "rolling": RollingConfig,
    }
    unknown = set(data) - set(sections)
    if unknown:
        raise ValueError(f"Unknown configuration sections: {sorted(unknown)}")
    kwargs = {}
    for name, cls in sections.items():
        section = data.get(name)
        if isinstance(section, dict):
            kwargs[name] = cls(**section)
    return ToolkitConfig(**kwargs)


def get_default_config() -> ToolkitConfig:
    """Get a default toolkit configuration."""
    return ToolkitConfig()

"""
Numerical defaults and reference constants for the WFGCRI toolkit.

This module centralizes the tolerances, grid sizes and study parameters used
across the measure engine, the theorem checks and the applications.

Usage:
    from src.core.constants import DEFAULT_REL_TOL, MAX_BETA

    if beta > MAX_BETA:
        raise DomainError(...)
"""

# =============================================================================
# Quadrature
# =============================================================================

DEFAULT_REL_TOL: float = 1e-8
DEFAULT_ABS_TOL: float = 1e-10
DEFAULT_SF_CUT: float = 1e-12  # upper limit where both sfs fall below this
DEFAULT_MAX_SUBDIVISIONS: int = 2000

# Extra breakpoints placed at these sf levels of the true model
BREAKPOINT_SF_LEVELS: tuple = (0.5, 1e-3, 1e-6)

TAIL_EXTENSIONS_MAX: int = 8  # times the upper limit may be pushed out
TAIL_EXTENSION_FACTOR: float = 2.0

MAX_BETA: float = 25.0  # Γ(β+1) stays well inside double range

# Inverse cumulative hazard root search
ROOT_ABS_TOL: float = 1e-12
ROOT_REL_TOL: float = 4 * 2.220446049250313e-16
ROOT_MAX_ITER: int = 200

# =============================================================================
# Model validation
# =============================================================================

MIXTURE_WEIGHT_TOL: float = 1e-9  # |Σ p_i − 1| allowed
ST_ORDER_GRID_POINTS: int = 1000
ST_ORDER_TOL: float = 1e-12

# =============================================================================
# Bound checks
# =============================================================================

BOUND_MARGIN_REL: float = 1e-7  # margin = rel · max(|lhs|, |rhs|, 1)
BOUND_RETRY_TIGHTEN: float = 10.0
LOG_OVERFLOW_LIMIT: float = 700.0  # exp() of anything larger is not representable
DEFAULT_SUITE_CONFIGS: int = 200
SUITE_WEIGHT_EXPONENTS: tuple = (0.0, 0.3, 1.0, 2.0)
SUITE_BETA_RANGE: tuple = (0.1, 3.0)

# =============================================================================
# Monte Carlo reference studies
# =============================================================================

PHR_STUDY_RATE: float = 0.8
PHR_STUDY_ALPHA: float = 0.5
PHR_STUDY_BETAS: tuple = (0.2, 0.5, 0.7, 0.9, 1.3, 1.5)

TWO_SAMPLE_TRUE_RATE: float = 2.5
TWO_SAMPLE_REF_RATE: float = 3.5
TWO_SAMPLE_BETAS: tuple = (0.3, 0.5, 0.7, 0.9, 1.2, 1.5)

STUDY_SAMPLE_SIZES: tuple = (100, 300, 500, 700, 1000)
STUDY_REPLICATIONS: int = 10000
CI_Z_95: float = 1.96

PRNG_NAME: str = "PCG64"

# =============================================================================
# Chaotic maps
# =============================================================================

CHAOS_X0: float = 0.01
CHAOS_LENGTH: int = 10000
CHAOS_ALPHA: float = 0.5
CHAOS_BETA_STEP: float = 0.01
TENT_R_MAX: float = 2.0

# =============================================================================
# Financial series
# =============================================================================

ROLLING_WINDOW: int = 250  # trading days
ROLLING_STEP: int = 100
ROLLING_ALPHAS: tuple = (5.0, 10.0)

# =============================================================================
# Output
# =============================================================================

SIGNIFICANT_DIGITS: int = 9
FLOAT_FORMAT: str = "%.9g"
SEED_ENV_VAR: str = "WFGCRI_SEED"

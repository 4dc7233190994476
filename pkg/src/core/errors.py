"""
Exception hierarchy for the WFGCRI toolkit.

Every error raised by library code derives from WfgcriError and carries a
stable machine-readable ``code`` plus the process exit status the CLI maps
it to. Library modules raise; only ``src.main`` turns exceptions into exit
codes and JSON on stderr.

Usage:
    from src.core.errors import DomainError, IntegrationFailure

    if beta < 0:
        raise DomainError("beta must be >= 0", beta=beta)
"""

from typing import Any, Dict

EXIT_OK: int = 0
EXIT_USAGE: int = 2
EXIT_NUMERICAL: int = 3


class WfgcriError(Exception):
    """Base class for all toolkit errors."""

    code: str = "wfgcri_error"
    exit_status: int = EXIT_NUMERICAL

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Structured form written to stderr by the CLI."""
        return {"code": self.code, "message": self.message, "details": self.details}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(code={self.code!r}, message={self.message!r})"


class DomainError(WfgcriError, ValueError):
    """An argument lies outside the domain of the operation."""

    code = "domain_error"
    exit_status = EXIT_USAGE


class ModelSpecError(DomainError):
    """A model specification string could not be parsed."""

    code = "model_spec_error"


class IngestionError(WfgcriError, ValueError):
    """Input data (prices, observations) is malformed."""

    code = "ingestion_error"
    exit_status = EXIT_USAGE


class IntegrationFailure(WfgcriError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    code = "integration_failure"


class DivergenceError(IntegrationFailure):
    """The tail bound indicates the integral does not converge."""

    code = "divergence"


class ConditioningError(WfgcriError, ArithmeticError):
    """A survival function vanishes at the conditioning time."""

    code = "conditioning_error"


class DegenerateInputError(DomainError):
    """Too few distinct values to compute a spread-based quantity."""

    code = "degenerate_input"
    exit_status = EXIT_NUMERICAL


class UsageError(DomainError):
    """The command line could not be parsed."""

    code = "usage_error"

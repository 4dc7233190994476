"""
Run manifests and deterministic output helpers.

Every CLI run writes a manifest recording what was asked for (subcommand,
argument vector, seed), what produced it (package version, PRNG), when, and
the SHA-256 digest of each artifact it emitted.
"""

from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import hashlib
import json
import logging
import math

from src.core.constants import PRNG_NAME, SIGNIFICANT_DIGITS

logger = logging.getLogger(__name__)


def get_package_version() -> str:
    """
    Get the version of the wfgcri package.

    Returns:
        Version string, or "0.0.0-dev" if not installed as a package.
    """
    try:
        return version("wfgcri")
    except PackageNotFoundError:
        return "0.0.0-dev"


def round_sig(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round to ``digits`` significant digits; non-finite values pass through."""
    if not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def file_digest(path: Union[str, Path]) -> str:
    """SHA-256 hex digest of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


@dataclass
class RunManifest:
    """Provenance record for one CLI invocation."""

    subcommand: str
    argv: List[str]
    seed: Optional[int] = None
    version: str = field(default_factory=get_package_version)
    prng: str = PRNG_NAME
    started_at: str = field(default_factory=_utc_now)
    finished_at: Optional[str] = None
    outputs: Dict[str, str] = field(default_factory=dict)
    status: str = "running"
    exit_status: Optional[int] = None
    error: Optional[Dict[str, Any]] = None

    def record_output(self, path: Union[str, Path]) -> None:
        """Add (or refresh) the digest of an emitted artifact."""
        self.outputs[str(path)] = file_digest(path)

    def finish(self, exit_status: int, error: Optional[Dict[str, Any]] = None) -> None:
        self.finished_at = _utc_now()
        self.exit_status = exit_status
        self.status = "ok" if exit_status == 0 else "failed"
        self.error = error

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def write(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")
        logger.debug(f"Wrote run manifest to {path}")

#!/usr/bin/env python3
"""
WFGCRI toolkit command line.

Subcommands:
    measure     evaluate a measure (or a beta/t curve of it) by quadrature
    estimate    plug-in estimate from one or two observation files
    simulate    Monte Carlo replication study, emitted as a table
    verify      randomized inequality checks, one CSV row per check
    chaos       Ricker/Tent WFGCRI curves or bifurcation data
    finance     rolling-window contour grid (roll) or two-series curve (compare)

Every run writes a JSON manifest (``--manifest``, default ``<out>.manifest.json``
or ``wfgcri-manifest.json``). Failures are reported as one JSON object on
stderr with a stable ``code``; the exit status is 0 on success, 2 for usage
and input errors and 3 for numerical failures.

Environment Variables:
    WFGCRI_SEED: seed used when --seed is not given (default 0)
"""

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple
import argparse
import difflib
import json
import logging
import math
import os
import sys

import pandas as pd

from src.chaos import bifurcation_data, wfgcri_curve
from src.core.config import ToolkitConfig, create_toolkit_config, load_config
from src.core.constants import FLOAT_FORMAT, SEED_ENV_VAR
from src.core.errors import EXIT_OK, EXIT_USAGE, IngestionError, UsageError, WfgcriError
from src.core.manifest import RunManifest, round_sig
from src.distributions import parse_model
from src.estimators import EmpiricalSample, estimate_wfgcri_phr, estimate_wfgcri_two_sample
from src.finance import compare_series, load_prices, log_returns, rolling_wfgcri
from src.measures import MEASURE_NAMES, MeasureRequest, WeightSpec, compute, measure_curve
from src.montecarlo import default_betas, emit_table, run_study
from src.theory import TheoremId, run_all_suites, run_suite

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("measure", "estimate", "simulate", "verify", "chaos", "finance")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_MANIFEST = "wfgcri-manifest.json"
EXIT_INTERNAL = 1


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message, prog=self.prog)


# =============================================================================
# Argument types
# =============================================================================


def parse_range(text: str) -> List[float]:
    """``lo:hi:step`` to the inclusive grid lo, lo+step, ..., <= hi."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric range {text!r}") from None
    if not (step > 0 and hi >= lo):
        raise argparse.ArgumentTypeError(f"range needs step > 0 and hi >= lo, got {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def parse_pair(text: str) -> Tuple[float, float]:
    """``lo:hi``."""
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric range {text!r}") from None


def float_list(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers a,b,..., got {text!r}") from None


def int_list(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers a,b,..., got {text!r}") from None


# =============================================================================
# Parser
# =============================================================================


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("common options")
    group.add_argument("--seed", type=int, help=f"PRNG seed (default: ${SEED_ENV_VAR} or 0)")
    group.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    group.add_argument("--config", help="YAML or JSON configuration file")
    group.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging level on stderr (default: WARNING)",
    )
    group.add_argument("--out", help="output file (default: stdout)")
    group.add_argument("--manifest", help="run manifest path")
    return common


def build_parser() -> CliParser:
    common = _common_options()
    parser = CliParser(
        prog="wfgcri", description="Weighted fractional cumulative residual inaccuracy toolkit"
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = commands.add_parser("measure", parents=[common], help="evaluate a measure by quadrature")
    p.add_argument("--measure", default="wfgcri", choices=MEASURE_NAMES, help="measure to evaluate")
    p.add_argument("--true", required=True, help="true model spec, e.g. exp:rate=2.5")
    p.add_argument("--ref", help="reference model spec (default: the true model)")
    p.add_argument("--beta", type=float, default=1.0, help="fractional order (default: 1)")
    p.add_argument("--weight-exp", type=float, default=0.0, help="c in psi(w) = w^c (default: 0)")
    p.add_argument("--t", type=float, help="inspection time for dynamic measures")
    p.add_argument("--alpha", type=float, help="PHR/PO parameter for dwfgcri-phr/dwfgcri-po")
    p.add_argument("--curve", choices=["beta", "t"], help="sweep beta or t instead of one value")
    p.add_argument("--grid", type=parse_range, help="curve grid lo:hi:step")
    p.set_defaults(handler=cmd_measure)

    p = commands.add_parser("estimate", parents=[common], help="plug-in estimate from samples")
    p.add_argument("--sample", required=True, help="single-column CSV of observations of X")
    p.add_argument("--ref-sample", help="single-column CSV of observations of Y (two-sample)")
    p.add_argument("--beta", type=float, default=1.0, help="fractional order (default: 1)")
    p.add_argument("--alpha", type=float, default=1.0, help="PHR exponent (default: 1)")
    p.add_argument("--weight-exp", type=float, default=1.0, help="c in psi(w) = w^c (default: 1)")
    p.set_defaults(handler=cmd_estimate)

    p = commands.add_parser("simulate", parents=[common], help="Monte Carlo replication study")
    p.add_argument("--scenario", choices=["phr", "two-sample"], help="scenario (default: phr)")
    p.add_argument("--betas", type=float_list, help="comma-separated beta grid")
    p.add_argument("--ns", type=int_list, help="comma-separated sample sizes")
    p.add_argument("--reps", type=int, help="replications per cell")
    p.add_argument("--weight-exp", type=float, help="c in psi(w) = w^c (default: 1)")
    p.add_argument("--format", default="csv", choices=["csv", "markdown"], help="table format")
    p.set_defaults(handler=cmd_simulate)

    p = commands.add_parser("verify", parents=[common], help="randomized inequality checks")
    p.add_argument(
        "--theorem",
        default="all",
        choices=[t.value for t in TheoremId] + ["all"],
        help="inequality to check (default: all)",
    )
    p.add_argument("--configs", type=int, help="random configurations per inequality")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("chaos", parents=[common], help="chaotic-map curves")
    p.add_argument("--map", default="ricker", choices=["ricker", "tent"], help="map")
    p.add_argument("--r-list", type=float_list, help="comma-separated control parameters")
    p.add_argument("--beta-range", type=parse_range, help="beta grid lo:hi:step")
    p.add_argument("--alpha", type=float, help="PHR exponent (default: 0.5)")
    p.add_argument("--x0", type=float, help="initial state (default: 0.01)")
    p.add_argument("--n", type=int, help="trajectory length (default: 10000)")
    p.add_argument("--burn-in", type=int, help="states dropped before use (default: 0)")
    p.add_argument("--bifurcation", action="store_true", help="emit bifurcation data instead")
    p.add_argument("--r-range", type=parse_pair, help="bifurcation r range lo:hi")
    p.add_argument("--r-steps", type=int, default=200, help="bifurcation r grid size")
    p.add_argument("--transient", type=int, default=500, help="bifurcation transient steps")
    p.add_argument("--keep", type=int, default=100, help="bifurcation states kept per r")
    p.set_defaults(handler=cmd_chaos)

    finance = commands.add_parser("finance", help="financial time-series applications")
    actions = finance.add_subparsers(dest="action", required=True, metavar="ACTION")

    p = actions.add_parser("roll", parents=[common], help="rolling-window contour grid")
    p.add_argument("--input", required=True, help="price CSV with date,close columns")
    p.add_argument("--window", type=int, help="window length in trading days (default: 250)")
    p.add_argument("--step", type=int, help="window advance (default: 100)")
    p.add_argument("--alphas", type=float_list, help="comma-separated PHR exponents")
    p.add_argument("--beta-range", type=parse_range, help="beta grid lo:hi:step")
    p.add_argument("--per-window-shift", action="store_true", help="shift windows separately")
    p.set_defaults(handler=cmd_finance_roll)

    p = actions.add_parser("compare", parents=[common], help="two-series WFGCRI curve")
    p.add_argument("--true", required=True, help="price CSV of the true series")
    p.add_argument("--ref", required=True, help="price CSV of the reference series")
    p.add_argument("--beta-range", type=parse_range, default="0.01:5:0.01", help="beta grid")
    p.add_argument("--weight-exp", type=float, default=1.0, help="c in psi(w) = w^c (default: 1)")
    p.set_defaults(handler=cmd_finance_compare)

    return parser


# =============================================================================
# Run context and output
# =============================================================================


@dataclass
class RunContext:
    args: argparse.Namespace
    config: ToolkitConfig
    raw_config: Dict[str, Any]
    seed: int
    manifest: RunManifest

    def emit(self, text: str) -> None:
        out = self.args.out
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", newline="\n") as f:
                f.write(text)
            self.manifest.record_output(path)
            logger.info(f"wrote {path}")
        else:
            sys.stdout.write(text)

    def emit_json(self, payload: Dict[str, Any]) -> None:
        self.emit(json.dumps(_rounded(payload), sort_keys=True) + "\n")

    def emit_frame(self, frame: pd.DataFrame) -> None:
        frame = frame.copy()
        for column in frame.columns:
            if frame[column].dtype == bool:
                frame[column] = frame[column].map({True: "true", False: "false"})
        self.emit(frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))


def _rounded(value: Any) -> Any:
    if isinstance(value, float):
        return round_sig(value)
    if isinstance(value, dict):
        return {k: _rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(v) for v in value]
    return value


def resolve_seed(flag: Optional[int]) -> int:
    if flag is not None:
        seed = flag
    else:
        env = os.getenv(SEED_ENV_VAR)
        if env is None:
            return 0
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV_VAR} must be an integer", value=env) from None
    if seed < 0:
        raise UsageError("seed must be >= 0", seed=seed)
    return seed


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr, force=True
    )


def _first_positional(argv: Sequence[str]) -> Optional[str]:
    if argv and not argv[0].startswith("-"):
        return argv[0]
    return None


def _check_subcommand(argv: Sequence[str]) -> None:
    name = _first_positional(argv)
    if name is not None and name not in SUBCOMMANDS:
        close = difflib.get_close_matches(name, SUBCOMMANDS, n=1)
        raise UsageError(
            f"unknown subcommand {name!r}",
            suggestion=close[0] if close else None,
            choices=list(SUBCOMMANDS),
        )


def _manifest_target(argv: Sequence[str]) -> Path:
    """Manifest path from a lenient scan of argv, so that usage errors get one too."""
    values: Dict[str, str] = {}
    for i, token in enumerate(argv):
        for flag in ("--manifest", "--out"):
            if token == flag and i + 1 < len(argv):
                values[flag] = argv[i + 1]
            elif token.startswith(flag + "="):
                values[flag] = token.split("=", 1)[1]
    if "--manifest" in values:
        return Path(values["--manifest"])
    if "--out" in values:
        return Path(values["--out"] + ".manifest.json")
    return Path(DEFAULT_MANIFEST)


# =============================================================================
# Subcommands
# =============================================================================


def cmd_measure(ctx: RunContext) -> None:
    a = ctx.args
    x = parse_model(a.true)
    y = parse_model(a.ref) if a.ref else x
    req = MeasureRequest(
        x, y, a.beta, WeightSpec(a.weight_exp), t=a.t, integration=ctx.config.integration
    )
    if a.curve:
        if not a.grid:
            raise UsageError("--curve needs --grid lo:hi:step")
        rows = measure_curve(a.measure, req, a.curve, a.grid, a.alpha)
        ctx.emit_frame(pd.DataFrame(rows, columns=[a.curve, "value"]))
        return
    result = compute(a.measure, req, a.alpha)
    payload = {"measure": a.measure, "request": req.describe(), **result.to_dict()}
    if a.alpha is not None:
        payload["alpha"] = a.alpha
    ctx.emit_json(payload)


def read_observations(path: str) -> EmpiricalSample:
    """Observations from the first column of a CSV; a header line is skipped."""
    file = Path(path)
    if not file.exists():
        raise IngestionError(f"observation file not found: {file}", path=str(file))
    column = pd.read_csv(file, header=None, usecols=[0]).iloc[:, 0]
    values = pd.to_numeric(column, errors="coerce")
    dropped = int(values.isna().sum())
    if dropped:
        logger.debug(f"{file.name}: skipped {dropped} non-numeric rows")
    values = values.dropna().to_numpy(dtype=float)
    if values.size == 0:
        raise IngestionError(f"{file.name} contains no observations", path=str(file))
    return EmpiricalSample(values)


def cmd_estimate(ctx: RunContext) -> None:
    a = ctx.args
    x = read_observations(a.sample)
    if a.ref_sample:
        y = read_observations(a.ref_sample)
        value = estimate_wfgcri_two_sample(x, y, a.beta, a.weight_exp)
        m: Optional[int] = y.n
    else:
        value = estimate_wfgcri_phr(x, a.alpha, a.beta, a.weight_exp)
        m = None
    ctx.emit_json({"estimate": value, "n": x.n, "m": m})


def cmd_simulate(ctx: RunContext) -> None:
    a = ctx.args
    base = ctx.config.study
    scenario = a.scenario or base.scenario
    if a.betas:
        betas = a.betas
    elif "betas" in (ctx.raw_config.get("study") or {}):
        betas = list(base.betas)
    else:
        betas = default_betas(scenario)
    config = replace(
        base,
        scenario=scenario,
        betas=betas,
        sample_sizes=a.ns or base.sample_sizes,
        replications=a.reps or base.replications,
        weight_exp=a.weight_exp if a.weight_exp is not None else base.weight_exp,
        seed=ctx.seed,
        jobs=a.jobs,
    )
    report = run_study(config)
    ctx.emit(emit_table(report, a.format))


def cmd_verify(ctx: RunContext) -> None:
    a = ctx.args
    config = replace(
        ctx.config.verify, seed=ctx.seed, configs=a.configs or ctx.config.verify.configs
    )
    if a.theorem == "all":
        checks = run_all_suites(config, ctx.config.integration)
    else:
        checks = run_suite(TheoremId(a.theorem), config, ctx.config.integration)
    columns = ["theorem", "config_hash", "lhs", "rhs", "slack", "holds", "status"]
    ctx.emit_frame(pd.DataFrame([c.to_row() for c in checks], columns=columns))


def cmd_chaos(ctx: RunContext) -> None:
    a = ctx.args
    chaos = ctx.config.chaos
    x0 = a.x0 if a.x0 is not None else chaos.x0
    if a.bifurcation:
        if not a.r_range:
            raise UsageError("--bifurcation needs --r-range lo:hi")
        frame = bifurcation_data(a.map, a.r_range, a.r_steps, x0, a.transient, a.keep)
        ctx.emit_frame(frame)
        return
    if not a.r_list:
        raise UsageError("chaos curves need --r-list")
    betas = a.beta_range or parse_range(f"{chaos.beta_min}:{chaos.beta_max}:{chaos.beta_step}")
    curve = wfgcri_curve(
        a.map,
        a.r_list,
        betas,
        alpha=a.alpha if a.alpha is not None else chaos.alpha,
        x0=x0,
        n=a.n if a.n is not None else chaos.n,
        burn_in=a.burn_in if a.burn_in is not None else chaos.burn_in,
        jobs=a.jobs,
    )
    ctx.emit_frame(curve.to_frame())


def cmd_finance_roll(ctx: RunContext) -> None:
    a = ctx.args
    base = ctx.config.rolling
    config = replace(
        base,
        window_len=a.window or base.window_len,
        step=a.step or base.step,
        alphas=a.alphas or base.alphas,
        betas=a.beta_range or base.betas,
        per_window_shift=a.per_window_shift or base.per_window_shift,
    )
    returns = log_returns(load_prices(a.input))
    frame = rolling_wfgcri(returns, config, jobs=a.jobs)
    ctx.emit_frame(frame[["window_start", "beta", "alpha", "value", "degenerate"]])


def cmd_finance_compare(ctx: RunContext) -> None:
    a = ctx.args
    true_series = log_returns(load_prices(a.true))
    ref_series = log_returns(load_prices(a.ref))
    ctx.emit_frame(
        compare_series(true_series, ref_series, a.beta_range, a.weight_exp, jobs=a.jobs)
    )


# =============================================================================
# Entry point
# =============================================================================


def _error_payload(code: str, message: str) -> Dict[str, Any]:
    return {"code": code, "message": message, "details": {}}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    manifest = RunManifest(subcommand=_first_positional(argv) or "", argv=argv)
    target = _manifest_target(argv)
    error: Optional[Dict[str, Any]] = None
    status = EXIT_OK

    try:
        _check_subcommand(argv)
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        raw = load_config(args.config) if args.config else {}
        ctx = RunContext(
            args=args,
            config=create_toolkit_config(raw),
            raw_config=raw,
            seed=resolve_seed(args.seed),
            manifest=manifest,
        )
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1", jobs=args.jobs)
        manifest.seed = ctx.seed
        args.handler(ctx)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    except WfgcriError as e:
        status, error = e.exit_status, e.to_dict()
    except (FileNotFoundError, ValueError, TypeError) as e:
        # configuration files
        status, error = EXIT_USAGE, _error_payload("usage_error", str(e))
    except Exception as e:
        logger.exception(f"Fatal error: {e}")
        status, error = EXIT_INTERNAL, _error_payload("internal_error", str(e))

    if error is not None:
        sys.stderr.write(json.dumps(error, sort_keys=True, default=str) + "\n")
    manifest.finish(status, error)
    try:
        manifest.write(target)
    except OSError as e:
        logger.error(f"could not write manifest {target}: {e}")
    return status


if __name__ == "__main__":
    sys.exit(main())

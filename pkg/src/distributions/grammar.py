"""
Parser for the model specification grammar used by the CLI and config files.

    exp:rate=0.8
    weibull:k=2,eta=1.5
    rayleigh:b=2
    gamma2
    mix:[0.3*exp:rate=1.2;0.4*exp:rate=1.5;0.3*exp:rate=2.5]
    phr:alpha=0.5,base=<model>
    po:alpha=0.5,base=<model>
    trunc:a=0.5,b=3,base=<model>
    affine:a=2,b=1,base=<model>
    power:p=2,base=<model>

``base=`` must come last in a parameter list; everything after it is the
nested model. ``SurvivalModel.to_spec()`` produces strings in this grammar.
"""

from typing import Callable, Dict, List, Tuple
import difflib
import math

from src.core.errors import DomainError, ModelSpecError
from src.distributions.base import SurvivalModel
from src.distributions.families import Exponential, GammaShape2, Rayleigh, Weibull
from src.distributions.transforms import (
    AffineTransform,
    MixtureHazard,
    PhrTransform,
    PoTransform,
    PowerTransform,
    TruncatedModel,
)


def _split_params(spec: str, body: str) -> Tuple[Dict[str, float], str]:
    """Split ``k=v,...,base=<model>`` into numeric params and the nested spec."""
    nested = ""
    idx = body.find("base=")
    if idx >= 0:
        nested = body[idx + len("base=") :]
        body = body[:idx].rstrip(",")
    params: Dict[str, float] = {}
    for item in filter(None, body.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ModelSpecError(f"expected key=value, got {item!r}", spec=spec)
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ModelSpecError(f"parameter {key!r} is not a number: {value!r}", spec=spec)
        if not math.isfinite(params[key.strip()]):
            raise ModelSpecError(f"parameter {key!r} must be finite", spec=spec)
    return params, nested


def _require(spec: str, params: Dict[str, float], *names: str) -> List[float]:
    missing = [n for n in names if n not in params]
    extra = sorted(set(params) - set(names))
    if missing or extra:
        raise ModelSpecError(
            f"expected parameters {list(names)}",
            spec=spec,
            missing=missing,
            unexpected=extra,
        )
    return [params[n] for n in names]


def _split_top_level(body: str, sep: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return parts


def _parse_mixture(spec: str, body: str) -> SurvivalModel:
    if not (body.startswith("[") and body.endswith("]")):
        raise ModelSpecError("mixture components must be enclosed in [...]", spec=spec)
    components = []
    for item in _split_top_level(body[1:-1], ";"):
        weight, star, component = item.partition("*")
        if not star:
            raise ModelSpecError(f"mixture component needs 'p*<model>', got {item!r}", spec=spec)
        try:
            p = float(weight)
        except ValueError:
            raise ModelSpecError(f"mixture weight is not a number: {weight!r}", spec=spec)
        components.append((p, parse_model(component)))
    return MixtureHazard(tuple(components))


def _with_base(spec: str, nested: str) -> SurvivalModel:
    if not nested:
        raise ModelSpecError("missing base=<model>", spec=spec)
    return parse_model(nested)


def _exp(spec, body):
    (rate,) = _require(spec, _split_params(spec, body)[0], "rate")
    return Exponential(rate)


def _weibull(spec, body):
    k, eta = _require(spec, _split_params(spec, body)[0], "k", "eta")
    return Weibull(k, eta)


def _rayleigh(spec, body):
    (b,) = _require(spec, _split_params(spec, body)[0], "b")
    return Rayleigh(b)


def _gamma2(spec, body):
    if body:
        raise ModelSpecError("gamma2 takes no parameters", spec=spec)
    return GammaShape2()


def _phr(spec, body):
    params, nested = _split_params(spec, body)
    (alpha,) = _require(spec, params, "alpha")
    return PhrTransform(_with_base(spec, nested), alpha)


def _po(spec, body):
    params, nested = _split_params(spec, body)
    (alpha,) = _require(spec, params, "alpha")
    return PoTransform(_with_base(spec, nested), alpha)


def _trunc(spec, body):
    params, nested = _split_params(spec, body)
    a, b = _require(spec, params, "a", "b")
    return TruncatedModel(_with_base(spec, nested), a, b)


def _affine(spec, body):
    params, nested = _split_params(spec, body)
    params.setdefault("b", 0.0)
    a, b = _require(spec, params, "a", "b")
    return AffineTransform(_with_base(spec, nested), a, b)


def _power(spec, body):
    params, nested = _split_params(spec, body)
    (p,) = _require(spec, params, "p")
    return PowerTransform(_with_base(spec, nested), p)


_PARSERS: Dict[str, Callable[[str, str], SurvivalModel]] = {
    "exp": _exp,
    "weibull": _weibull,
    "rayleigh": _rayleigh,
    "gamma2": _gamma2,
    "mix": _parse_mixture,
    "phr": _phr,
    "po": _po,
    "trunc": _trunc,
    "affine": _affine,
    "power": _power,
}


def parse_model(spec: str) -> SurvivalModel:
    """
    Parse a model specification string.

    Raises:
        ModelSpecError: malformed spec, unknown family or invalid parameters
    """
    text = spec.strip().replace(" ", "")
    name, _, body = text.partition(":")
    parser = _PARSERS.get(name)
    if parser is None:
        suggestion = difflib.get_close_matches(name, _PARSERS, n=1)
        raise ModelSpecError(
            f"unknown model family {name!r}",
            spec=spec,
            suggestion=suggestion[0] if suggestion else None,
        )
    try:
        return parser(spec, body)
    except ModelSpecError:
        raise
    except DomainError as e:
        raise ModelSpecError(f"invalid model {spec!r}: {e.message}", spec=spec, **e.details)

"""Floating-point evaluation and the symbolic/sampling equivalence test."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import DomainError, UnboundSymbol, UnresolvedFuncSym
from .nodes import Apply, Const, Expr, FuncSym, NamedConst, Power, Product, Sum, Var, free_symbols, func_symbols
from .normal import normalize, to_rf

# callback(derivs: dict[var, order], bindings) -> value
FuncCallback = Callable[[Mapping[str, int], Mapping[str, float]], float]

_NAMED = {"pi": math.pi}


def _elementary(name: str, v: float) -> float:
    from ..specfun import specfun_eval

    if name == "exp":
        return math.exp(v)
    if name == "ln":
        if v <= 0:
            raise DomainError(f"ln of non-positive value {v}")
        return math.log(v)
    if name == "sqrt":
        if v < 0:
            raise DomainError(f"sqrt of negative value {v}")
        return math.sqrt(v)
    if name in ("sin", "cos", "sinh", "cosh"):
        return getattr(math, name)(v)
    return specfun_eval(name, v)


def eval_num(
    e: Expr,
    bindings: Mapping[str, float] | None = None,
    funcs: Mapping[str, FuncCallback] | None = None,
) -> float:
    """Evaluate ``e`` in double precision."""
    bindings = bindings or {}
    funcs = funcs or {}
    return _eval(e, bindings, funcs)


def _eval(e, b, funcs):
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        try:
            return float(b[e.name])
        except KeyError:
            raise UnboundSymbol(e.name) from None
    if isinstance(e, NamedConst):
        if e.name == "gamma":
            from ..specfun import EULER_GAMMA

            return EULER_GAMMA
        return _NAMED[e.name]
    if isinstance(e, Sum):
        return math.fsum(_eval(t, b, funcs) for t in e.terms)
    if isinstance(e, Product):
        out = 1.0
        for f in e.factors:
            out *= _eval(f, b, funcs)
        return out
    if isinstance(e, Power):
        base = _eval(e.base, b, funcs)
        if e.exp.denominator == 1:
            if base == 0 and e.exp < 0:
                raise DomainError("division by zero")
            return base ** int(e.exp)
        if base < 0 or (base == 0 and e.exp < 0):
            raise DomainError(f"{base} raised to {e.exp}")
        return base ** float(e.exp)
    if isinstance(e, Apply):
        return _elementary(e.name, _eval(e.args[0], b, funcs))
    if isinstance(e, FuncSym):
        if e.name not in funcs:
            raise UnresolvedFuncSym(f"no callback for function symbol {e.name!r}")
        return float(funcs[e.name](dict(e.derivs), b))
    raise TypeError(f"not an expression: {e!r}")


@dataclass(frozen=True)
class ProvenZero:
    pass


@dataclass(frozen=True)
class NumericallyZero:
    max_abs_residual: float


@dataclass(frozen=True)
class NonZero:
    witness: dict = field(hash=False)
    value: float = 0.0


EquivVerdict = ProvenZero | NumericallyZero | NonZero


def is_zero_verdict(v) -> bool:
    return isinstance(v, (ProvenZero, NumericallyZero))


DEFAULT_RANGES = {"x": (0.5, 3.0)}
OTHER_RANGE = (-2.0, 2.0)


def sample_point(rng: random.Random, names, ranges: Mapping[str, tuple] | None = None) -> dict:
    ranges = {**DEFAULT_RANGES, **(ranges or {})}
    return {n: rng.uniform(*ranges.get(n, OTHER_RANGE)) for n in sorted(names)}


def equiv(
    e1: Expr,
    e2: Expr,
    seed: int = 0,
    samples: int = 200,
    tol: float = 1e-9,
    *,
    funcs: Optional[Mapping[str, FuncCallback]] = None,
    ranges: Optional[Mapping[str, tuple]] = None,
):
    """Decide e1 == e2: exactly via the normal form, else by seeded sampling."""
    diff = to_rf(e1) - to_rf(e2)
    if diff.is_zero():
        return ProvenZero()
    if func_symbols(e1) | func_symbols(e2) and not funcs:
        raise UnresolvedFuncSym("sampling needs callbacks for the function symbols")
    names = set(free_symbols(e1) | free_symbols(e2))
    for fs in func_symbols(e1) | func_symbols(e2):
        names.update(fs.args)
    rng = random.Random(seed)
    worst = 0.0
    evaluated = 0
    last_error = None
    attempts = 0
    while evaluated < samples and attempts < 20 * samples:
        attempts += 1
        point = sample_point(rng, names, ranges)
        try:
            v1 = eval_num(e1, point, funcs)
            v2 = eval_num(e2, point, funcs)
        except (DomainError, OverflowError, ZeroDivisionError) as exc:
            last_error = exc
            continue
        evaluated += 1
        r = abs(v1 - v2)
        if not r < tol * (1.0 + max(abs(v1), abs(v2))):
            return NonZero(point, v1 - v2)
        worst = max(worst, r)
    if evaluated == 0 and last_error is not None:
        raise last_error
    return NumericallyZero(worst)


def equiv_zero(e: Expr, **kwargs):
    return equiv(e, Const(0), **kwargs)


__all__ = [
    "eval_num", "equiv", "equiv_zero", "ProvenZero", "NumericallyZero", "NonZero",
    "EquivVerdict", "is_zero_verdict", "sample_point", "normalize",
]

"""Integral representations of the special functions.

This is a verification path: nothing here shares code with the series in
``specfun`` except the Euler-Mascheroni constant needed by Chi.
"""

from __future__ import annotations

import math

from scipy import integrate

from .expr.errors import DomainError
from .specfun import EULER_GAMMA, POSITIVE_ONLY


class NonConvergence(RuntimeError):
    pass


def _quad(f, a, b, points=None):
    value, err, *rest = integrate.quad(
        f, a, b, epsabs=1e-13, epsrel=1e-12, limit=500, full_output=1, points=points
    )
    if len(rest) > 1 and "The maximum number of subdivisions" in str(rest[1]):
        raise NonConvergence(f"quadrature failed to converge on [{a}, {b}]")
    return value


def _tail(x: float) -> float:
    # e^{-x cosh t} < 1e-300 beyond this t
    return math.acosh(max(1.0, 700.0 / x)) + 1.0


def quadrature_oracle(name: str, x: float) -> float:
    x = float(x)
    if name in POSITIVE_ONLY and not x > 0:
        raise DomainError(f"{name} is defined only for x > 0 (got {x})")
    pi = math.pi
    if name == "besselj0":
        return _quad(lambda th: math.cos(x * math.sin(th)), 0.0, pi) / pi
    if name == "besselj1":
        return _quad(lambda th: math.cos(th - x * math.sin(th)), 0.0, pi) / pi
    if name == "besseli0":
        return _quad(lambda th: math.exp(x * math.cos(th)), 0.0, pi) / pi
    if name == "besseli1":
        return _quad(lambda th: math.exp(x * math.cos(th)) * math.cos(th), 0.0, pi) / pi
    if name == "besselk0":
        return _quad(lambda s: math.exp(-x * math.cosh(s)), 0.0, _tail(x))
    if name == "besselk1":
        return _quad(lambda s: math.exp(-x * math.cosh(s)) * math.cosh(s), 0.0, _tail(x))
    if name in ("bessely0", "bessely1"):
        n = 0 if name == "bessely0" else 1
        first = _quad(lambda th: math.sin(x * math.sin(th) - n * th), 0.0, pi) / pi
        upper = math.asinh(750.0 / x) + 1.0
        second = _quad(
            lambda s: (math.exp(n * s) + (-1) ** n * math.exp(-n * s)) * math.exp(-x * math.sinh(s)),
            0.0,
            upper,
        ) / pi
        return first - second
    if name == "shi":
        if x == 0:
            return 0.0
        return _quad(lambda s: math.sinh(s) / s if s else 1.0, 0.0, x)
    if name == "chi":
        integral = _quad(lambda s: (math.cosh(s) - 1.0) / s if s else 0.0, 0.0, x)
        return EULER_GAMMA + math.log(x) + integral
    raise ValueError(f"unknown special function {name!r}")

"""Bessel functions of orders 0 and 1, Shi and Chi, by ascending series.

The logarithmic functions (Y, K) use the standard log-coupled series.  All
routines target |x| <= 10; accuracy degrades slowly beyond that and nothing
in this package evaluates them there.
"""

from __future__ import annotations

import math

from .expr.errors import DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243

NAMES = (
    "besselj0", "besselj1", "bessely0", "bessely1",
    "besseli0", "besseli1", "besselk0", "besselk1",
    "shi", "chi",
)
POSITIVE_ONLY = frozenset({"bessely0", "bessely1", "besselk0", "besselk1", "chi"})

_MAX_TERMS = 400


def _series(term0: float, ratio) -> float:
    """Sum term_k with term_{k+1} = term_k * ratio(k) until negligible."""
    terms = [term0]
    term = term0
    for k in range(_MAX_TERMS):
        term *= ratio(k)
        terms.append(term)
        if abs(term) < 1e-18 * max(1e-300, abs(terms[0])) and k > 2:
            break
    return math.fsum(terms)


def _bessel_first(n: int, x: float, sign: int) -> float:
    # sum_k sign^k (x/2)^(2k+n) / (k! (k+n)!)
    q = x * x / 4.0
    return _series((x / 2.0) ** n / math.factorial(n), lambda k: sign * q / ((k + 1) * (k + 1 + n)))


def besselj0(x: float) -> float:
    return _bessel_first(0, x, -1)


def besselj1(x: float) -> float:
    return _bessel_first(1, x, -1)


def besseli0(x: float) -> float:
    return _bessel_first(0, x, 1)


def besseli1(x: float) -> float:
    return _bessel_first(1, x, 1)


def _log_sum(n: int, x: float, sign: int) -> float:
    """sum_k [psi(k+1) + psi(n+k+1)] (sign x^2/4)^k / (k! (n+k)!)."""
    q = sign * x * x / 4.0
    harmonic_k = 0.0
    harmonic_nk = sum(1.0 / j for j in range(1, n + 1))
    power = 1.0 / math.factorial(n)
    terms = []
    for k in range(_MAX_TERMS):
        psi_sum = harmonic_k + harmonic_nk - 2.0 * EULER_GAMMA
        term = psi_sum * power
        terms.append(term)
        if k > 2 and abs(term) < 1e-18 * max(abs(t) for t in terms[:3]) and abs(power) < 1e-18:
            break
        power *= q / ((k + 1) * (n + k + 1))
        harmonic_k += 1.0 / (k + 1)
        harmonic_nk += 1.0 / (n + k + 1)
    return math.fsum(terms)


def _require_positive(name: str, x: float) -> None:
    if not x > 0:
        raise DomainError(f"{name} is defined only for x > 0 (got {x})")


def bessely0(x: float) -> float:
    _require_positive("bessely0", x)
    return (2.0 / math.pi) * math.log(x / 2.0) * besselj0(x) - _log_sum(0, x, -1) / math.pi


def bessely1(x: float) -> float:
    _require_positive("bessely1", x)
    return (
        -2.0 / (math.pi * x)
        + (2.0 / math.pi) * math.log(x / 2.0) * besselj1(x)
        - (x / 2.0) * _log_sum(1, x, -1) / math.pi
    )


def besselk0(x: float) -> float:
    _require_positive("besselk0", x)
    return -math.log(x / 2.0) * besseli0(x) + 0.5 * _log_sum(0, x, 1)


def besselk1(x: float) -> float:
    _require_positive("besselk1", x)
    return 1.0 / x + math.log(x / 2.0) * besseli1(x) - (x / 4.0) * _log_sum(1, x, 1)


def shi(x: float) -> float:
    # sum_k x^(2k+1) / ((2k+1) (2k+1)!)
    terms = []
    power = x
    for k in range(_MAX_TERMS):
        terms.append(power / (2 * k + 1))
        power *= x * x / ((2 * k + 2) * (2 * k + 3))
        if abs(power) < 1e-18 * abs(terms[0]) or power == 0.0:
            break
    return math.fsum(terms)


def chi(x: float) -> float:
    _require_positive("chi", x)
    terms = [EULER_GAMMA, math.log(x)]
    power = 1.0
    for k in range(1, _MAX_TERMS):
        power *= x * x / ((2 * k - 1) * (2 * k))
        terms.append(power / (2 * k))
        if power < 1e-18:
            break
    return math.fsum(terms)


_TABLE = {
    "besselj0": besselj0, "besselj1": besselj1,
    "bessely0": bessely0, "bessely1": bessely1,
    "besseli0": besseli0, "besseli1": besseli1,
    "besselk0": besselk0, "besselk1": besselk1,
    "shi": shi, "chi": chi,
}


def specfun_eval(name: str, x: float) -> float:
    try:
        f = _TABLE[name]
    except KeyError:
        raise ValueError(f"unknown special function {name!r}") from None
    return f(float(x))

"""Adjoint maps from the Lie series and the one-dimensional optimal system."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import LieAlgebra, matmul
from .expr import ZERO, Expr, Var, add, apply, const, mul, normalize, power, to_text

EPS = Var("eps")
Number = Union[Fraction, float]


class NotExponentiable(ValueError):
    pass


class ZeroElement(ValueError):
    pass


def ad_matrix(v, L: LieAlgebra) -> list[list[Fraction]]:
    return L.ad(v)


def _is_zero_matrix(m) -> bool:
    return all(x == 0 for row in m for x in row)


def _is_diagonal(m) -> bool:
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m)) if i != j)


@dataclass(frozen=True)
class AdjointMap:
    """Ad(exp(eps e_i)) = exp(-eps ad e_i) on coefficient columns.

    For a nilpotent generator ``terms`` holds the matrices (-1)^k ad^k / k!,
    so the map is sum_k eps^k terms[k].  For a diagonal generator ``diag``
    holds ad's diagonal and the map is diag(exp(-eps d)).
    """

    generator: int
    kind: str
    dim: int
    terms: tuple = ()
    diag: tuple = ()

    def closed_form(self, eps: Expr = EPS) -> list[list[Expr]]:
        n = self.dim
        if self.kind == "diagonal":
            return [
                [apply("exp", normalize(mul(const(-self.diag[i]), eps))) if i == j else ZERO for j in range(n)]
                for i in range(n)
            ]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(normalize(add(*(mul(const(t[i][j]), power(eps, k)) for k, t in enumerate(self.terms) if t[i][j]))))
            out.append(row)
        return out

    def matrix(self, eps) -> list[list]:
        """Numeric matrix: exact for rational eps unless exp entries are needed."""
        n = self.dim
        if self.kind == "diagonal":
            if eps == 0:
                return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
            e = float(eps)
            return [[math.exp(-e * float(self.diag[i])) if i == j else 0.0 for j in range(n)] for i in range(n)]
        if isinstance(eps, float):
            return [[sum(float(t[i][j]) * eps ** k for k, t in enumerate(self.terms)) for j in range(n)] for i in range(n)]
        eps = Fraction(eps)
        return [[sum((t[i][j] * eps ** k for k, t in enumerate(self.terms)), Fraction(0)) for j in range(n)] for i in range(n)]

    def apply(self, v, eps) -> tuple:
        m = self.matrix(eps)
        return tuple(sum((m[i][j] * v[j] for j in range(self.dim)), 0 * m[i][0]) for i in range(self.dim))


def adjoint_exp(L: LieAlgebra, i: int) -> AdjointMap:
    """Adjoint map of basis element i (0-based) as a function of eps."""
    A = L.ad(L.unit(i))
    n = L.dim
    identity = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    if _is_zero_matrix(A):
        return AdjointMap(i, "identity", n, terms=(tuple(map(tuple, identity)),))
    power_k = identity
    terms = [tuple(map(tuple, identity))]
    for k in range(1, n + 1):
        power_k = matmul(power_k, A)
        if _is_zero_matrix(power_k):
            return AdjointMap(i, "nilpotent", n, terms=tuple(terms))
        scale = Fraction((-1) ** k, math.factorial(k))
        terms.append(tuple(tuple(scale * x for x in row) for row in power_k))
    if _is_diagonal(A):
        return AdjointMap(i, "diagonal", n, diag=tuple(A[r][r] for r in range(n)))
    raise NotExponentiable(f"ad({L.labels[i]}) is neither nilpotent nor diagonal")


def format_combination(coeffs: Sequence[Expr], labels: Sequence[str]) -> str:
    parts = []
    for c, label in zip(coeffs, labels):
        c = normalize(c)
        if c == ZERO:
            continue
        text = to_text(c)
        if text == "1":
            parts.append(label)
        elif text == "-1":
            parts.append("-" + label)
        else:
            parts.append(f"({text})*{label}" if " " in text else f"{text}*{label}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def adjoint_table(L: LieAlgebra, eps: Expr = EPS) -> list[list[list[Expr]]]:
    """table[i][j] = coefficient vector of Ad(exp(eps e_i)) e_j."""
    table = []
    for i in range(L.dim):
        m = adjoint_exp(L, i).closed_form(eps)
        table.append([[m[k][j] for k in range(L.dim)] for j in range(L.dim)])
    return table


@dataclass(frozen=True)
class AdjointDiscrepancy:
    row: str
    col: str
    printed: str
    computed: str
    kind: str  # "eps-sign" when the printed entry is the computed one at -eps, else "entry"


def diff_adjoint_table(L: LieAlgebra, printed) -> list[AdjointDiscrepancy]:
    """Compare against ``printed[i][j] = (display, coefficient exprs)``."""
    table = adjoint_table(L)
    flipped = adjoint_table(L, mul(const(-1), EPS))
    out = []
    for i in range(L.dim):
        for j in range(L.dim):
            display, coeffs = printed[i][j]
            if all(normalize(add(a, mul(const(-1), b))) == ZERO for a, b in zip(table[i][j], coeffs)):
                continue
            sign_only = all(normalize(add(a, mul(const(-1), b))) == ZERO for a, b in zip(flipped[i][j], coeffs))
            out.append(AdjointDiscrepancy(
                L.labels[i], L.labels[j], display,
                format_combination(table[i][j], L.labels),
                "eps-sign" if sign_only else "entry",
            ))
    return out


# -- optimal system ------------------------------------------------------------

@dataclass(frozen=True)
class Conjugate:
    index: int  # 0-based basis index
    eps: Number


@dataclass(frozen=True)
class Scale:
    factor: Number


CLASS_IDS = ("X1", "X2", "X3", "X3-X1", "X3+X1", "aX2+X3", "aX1+bX2+X4")
EXACT_CLASSES = frozenset({"X1", "X2", "X3", "aX2+X3", "aX1+bX2+X4"})


@dataclass(frozen=True)
class CanonicalClass:
    id: str
    params: tuple = ()

    def representative(self) -> tuple:
        one, zero = Fraction(1), Fraction(0)
        if self.id == "X1":
            return (one, zero, zero, zero)
        if self.id == "X2":
            return (zero, one, zero, zero)
        if self.id == "X3":
            return (zero, zero, one, zero)
        if self.id == "X3-X1":
            return (-one, zero, one, zero)
        if self.id == "X3+X1":
            return (one, zero, one, zero)
        if self.id == "aX2+X3":
            return (zero, self.params[0], one, zero)
        if self.id == "aX1+bX2+X4":
            return (self.params[0], self.params[1], zero, one)
        raise ValueError(self.id)

    @property
    def tolerance(self) -> float:
        return 0.0 if self.id in EXACT_CLASSES else 1e-12


@dataclass(frozen=True)
class Classification:
    cls: CanonicalClass
    witness: tuple

    @property
    def tolerance(self) -> float:
        return self.cls.tolerance


def apply_witness(witness: Sequence, v, L: LieAlgebra) -> tuple:
    v = tuple(v)
    for step in witness:
        if isinstance(step, Scale):
            v = tuple(step.factor * x for x in v)
        else:
            v = adjoint_exp(L, step.index).apply(v, step.eps)
    return v


def _solve_linear_eps(amap: AdjointMap, v, target: int):
    """eps making component ``target`` of amap(eps) v vanish, when that is linear in eps."""
    coeffs = [sum((t[target][j] * v[j] for j in range(amap.dim)), Fraction(0)) for t in amap.terms]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) != 2:
        raise ValueError("component is not linear in eps under this generator")
    return -coeffs[0] / coeffs[1]


def _conjugate(L: LieAlgebra, v, index: int, eps, witness: list):
    if eps != 0:
        witness.append(Conjugate(index, eps))
        v = adjoint_exp(L, index).apply(v, eps)
    return v


def _scale(v, factor, witness: list):
    if factor != 1:
        witness.append(Scale(factor))
        v = tuple(factor * x for x in v)
    return v


def _unit_log_eps(L: LieAlgebra, index: int, target: int, value: Fraction, reference: int | None = None) -> float:
    """eps for the diagonal generator ``index`` sending |value| on ``target`` to 1.

    With ``reference`` the ratio target/reference is normalised instead.
    """
    d = adjoint_exp(L, index).diag
    rate = d[target] - (d[reference] if reference is not None else 0)
    if rate == 0:
        raise ValueError("generator does not rescale this component")
    return math.log(abs(float(value))) / float(rate)


def classify(v, L: LieAlgebra, normalize_case1: bool = False) -> Classification:
    """Canonical representative of span{v} among the seven families, with witness.

    Indices follow the basis (X1, X2, X3, X4).  Every conjugation parameter
    is solved from the adjoint maps of ``L`` rather than fixed in advance.
    """
    v = tuple(Fraction(x) for x in v)
    if not any(v):
        raise ZeroElement("the zero vector spans no subalgebra")
    w: list = []
    a1, a2, a3, a4 = v
    if a4 != 0:
        v = _scale(v, 1 / a4, w)
        eps = _solve_linear_eps(adjoint_exp(L, 0), v, 2)
        v = _conjugate(L, v, 0, eps, w)
        if normalize_case1 and v[0] != 0 and abs(v[0]) != 1:
            eps2 = _unit_log_eps(L, 1, 0, v[0], reference=3)
            w.append(Conjugate(1, eps2))
            v = adjoint_exp(L, 1).apply(v, eps2)
            w.append(Scale(1 / v[3]))
            v = tuple(x / v[3] for x in v)
            return Classification(CanonicalClass("aX1+bX2+X4", (math.copysign(1.0, v[0]), v[1])), tuple(w))
        return Classification(CanonicalClass("aX1+bX2+X4", (v[0], v[1])), tuple(w))
    if a3 != 0:
        v = _scale(v, 1 / a3, w)
        if v[1] != 0:
            eps = _solve_linear_eps(adjoint_exp(L, 0), v, 0)
            v = _conjugate(L, v, 0, eps, w)
            return Classification(CanonicalClass("aX2+X3", (v[1],)), tuple(w))
        if v[0] == 0:
            return Classification(CanonicalClass("X3"), tuple(w))
        sign = 1 if v[0] > 0 else -1
        if abs(v[0]) != 1:
            eps = _unit_log_eps(L, 1, 0, v[0])
            w.append(Conjugate(1, eps))
        return Classification(CanonicalClass("X3+X1" if sign > 0 else "X3-X1"), tuple(w))
    if a2 != 0:
        eps = _solve_linear_eps(adjoint_exp(L, 0), v, 0)
        v = _conjugate(L, v, 0, eps, w)
        v = _scale(v, 1 / v[1], w)
        return Classification(CanonicalClass("X2"), tuple(w))
    _scale(v, 1 / a1, w)
    return Classification(CanonicalClass("X1"), tuple(w))


def replay_error(result: Classification, v, L: LieAlgebra):
    """max |replayed - representative|; an exact 0 for exact classes."""
    got = apply_witness(result.witness, v, L)
    return max(abs(g - r) for g, r in zip(got, result.cls.representative()))

"""Finite-dimensional Lie algebras over Q with exact structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .expr import add, const, linear_relations, mul, normalize
from .jets import VectorField, lie_bracket

Vector = tuple  # tuple[Fraction, ...]


class NotClosed(ValueError):
    def __init__(self, pair, remainder):
        self.pair = pair
        self.remainder = remainder
        super().__init__(f"bracket of {pair} is not in the span: remainder {remainder}")


class NotALieAlgebra(ValueError):
    pass


# -- exact linear algebra ----------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def null_space(rows, ncols: int) -> list[Vector]:
    """Basis of {v : rows . v = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def det(matrix) -> Fraction:
    m = [[Fraction(v) for v in r] for r in matrix]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def solve(matrix, rhs) -> Vector | None:
    """One exact solution of matrix . v = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        v[p] = row[-1]
    return tuple(v)


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def matvec(a, v) -> Vector:
    return tuple(sum((a[i][k] * v[k] for k in range(len(v))), Fraction(0)) for i in range(len(a)))


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Row-reduced basis with unit leading coefficients."""

    basis: tuple
    ambient: int

    @classmethod
    def span(cls, vectors, ambient: int) -> "Subspace":
        vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        red, _ = rref(vectors) if vectors else ([], [])
        return cls(tuple(tuple(r) for r in red), ambient)

    @classmethod
    def whole(cls, ambient: int) -> "Subspace":
        return cls.span([tuple(int(i == j) for j in range(ambient)) for i in range(ambient)], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return rank(list(self.basis) + [tuple(v)]) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis and self.ambient == other.ambient

    def __hash__(self):
        return hash((self.basis, self.ambient))

    def plus(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient)


# -- Lie algebras -------------------------------------------------------------

class LieAlgebra:
    """Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    def __init__(self, constants, labels: Sequence[str] | None = None):
        c = [[[Fraction(v) for v in cell] for cell in row] for row in constants]
        self.dim = len(c)
        self.c = tuple(tuple(tuple(cell) for cell in row) for row in c)
        self.labels = tuple(labels) if labels else tuple(f"e{i + 1}" for i in range(self.dim))
        self._check()

    def _check(self):
        n = self.dim
        for i, j, k in product(range(n), repeat=3):
            if self.c[i][j][k] != -self.c[j][i][k]:
                raise NotALieAlgebra(f"antisymmetry fails at ({i},{j},{k})")
        basis = [self.unit(i) for i in range(n)]
        for i, j, k in product(range(n), repeat=3):
            a, b, d = basis[i], basis[j], basis[k]
            total = _vadd(
                self.bracket(self.bracket(a, b), d),
                self.bracket(self.bracket(b, d), a),
                self.bracket(self.bracket(d, a), b),
            )
            if any(total):
                raise NotALieAlgebra(f"Jacobi identity fails for ({i},{j},{k})")

    def unit(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def zero(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.dim))

    def bracket(self, a, b) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                w = ai * bj
                for k, ck in enumerate(self.c[i][j]):
                    if ck:
                        out[k] += w * ck
        return tuple(out)

    def ad(self, v) -> list[list[Fraction]]:
        """Matrix of w -> [v, w] on coefficient columns."""
        cols = [self.bracket(v, self.unit(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def format(self, v) -> str:
        from .expr.printer import fraction_text

        parts = []
        for coeff, label in zip(v, self.labels):
            if coeff == 0:
                continue
            mag = abs(coeff)
            body = label if mag == 1 else f"{fraction_text(mag)}*{label}"
            parts.append(("- " if coeff < 0 else "+ ") + body)
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def bracket_space(self, a: Subspace, b: Subspace) -> Subspace:
        return Subspace.span([self.bracket(u, v) for u in a.basis for v in b.basis], self.dim)

    def is_subalgebra(self, s: Subspace) -> bool:
        return s.contains_space(self.bracket_space(s, s))

    def is_ideal(self, s: Subspace) -> bool:
        return s.contains_space(self.bracket_space(Subspace.whole(self.dim), s))

    def restrict(self, s: Subspace, labels=None) -> "LieAlgebra":
        """The subalgebra s as an algebra on its own row basis."""
        rows = [list(v) for v in s.basis]
        cols = [[rows[r][k] for r in range(len(rows))] for k in range(self.dim)]
        consts = []
        for u in s.basis:
            row = []
            for v in s.basis:
                coords = solve(cols, self.bracket(u, v))
                if coords is None:
                    raise NotClosed((u, v), self.bracket(u, v))
                row.append(coords)
            consts.append(row)
        return LieAlgebra(consts, labels)


def _vadd(*vs) -> Vector:
    return tuple(sum(col, Fraction(0)) for col in zip(*vs))


def from_vector_fields(fields: Sequence[VectorField]) -> LieAlgebra:
    """Structure constants of the span of ``fields`` by expanding every bracket."""
    n = len(fields)
    consts = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            br = lie_bracket(fields[i], fields[j])
            rows = []
            rhs = []
            for comp in range(3):
                exprs = [f.components[comp] for f in fields] + [br.components[comp]]
                for r in linear_relations(exprs):
                    rows.append(r[:n])
                    rhs.append(r[n])
            coords = solve(rows, rhs) if rows else tuple([Fraction(0)] * n)
            if coords is None:
                raise NotClosed((fields[i].label, fields[j].label), str(br))
            for k in range(n):
                consts[i][j][k] = coords[k]
                consts[j][i][k] = -coords[k]
    return LieAlgebra(consts, [f.label or f"V{i + 1}" for i, f in enumerate(fields)])


def combination(fields: Sequence[VectorField], coeffs) -> VectorField:
    comps = [normalize(add(*(mul(const(c), f.components[k]) for c, f in zip(coeffs, fields) if c))) for k in range(3)]
    return VectorField(*comps)


def table_consistency(fields: Sequence[VectorField], algebra: LieAlgebra) -> list[tuple[int, int]]:
    """Index pairs whose computed bracket disagrees with the algebra's constants."""
    bad = []
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            diff = lie_bracket(fields[i], fields[j]) - combination(fields, algebra.c[i][j])
            if not diff.is_zero():
                bad.append((i, j))
    return bad


def center(L: LieAlgebra) -> Subspace:
    rows = []
    for j in range(L.dim):
        # [z, e_j] = sum_i z_i c[i][j][k] = 0 for all k
        for k in range(L.dim):
            rows.append([L.c[i][j][k] for i in range(L.dim)])
    return Subspace.span(null_space(rows, L.dim), L.dim)


def derived_series(L: LieAlgebra, max_terms: int = 32) -> list[Subspace]:
    series = [Subspace.whole(L.dim)]
    while len(series) < max_terms:
        nxt = L.bracket_space(series[-1], series[-1])
        series.append(nxt)
        if nxt == series[-2] or nxt.dim == 0:
            break
    return series


def is_solvable_space(L: LieAlgebra, s: Subspace) -> bool:
    current = s
    while current.dim:
        nxt = L.bracket_space(current, current)
        if nxt == current:
            return False
        current = nxt
    return True


def killing_form(L: LieAlgebra) -> list[list[Fraction]]:
    ads = [L.ad(L.unit(i)) for i in range(L.dim)]
    return [[_trace(matmul(ads[i], ads[j])) for j in range(L.dim)] for i in range(L.dim)]


def _trace(m) -> Fraction:
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def killing_value(L: LieAlgebra, a, b) -> Fraction:
    K = killing_form(L)
    return sum((a[i] * K[i][j] * b[j] for i in range(L.dim) for j in range(L.dim)), Fraction(0))


def killing_orthogonal(L: LieAlgebra, s: Subspace) -> Subspace:
    K = killing_form(L)
    rows = [[sum((v[i] * K[i][j] for i in range(L.dim)), Fraction(0)) for j in range(L.dim)] for v in s.basis]
    return Subspace.span(null_space(rows, L.dim), L.dim)


def radical(L: LieAlgebra) -> Subspace:
    """Maximal solvable ideal: the Killing complement of [g, g]."""
    derived = L.bracket_space(Subspace.whole(L.dim), Subspace.whole(L.dim))
    return killing_orthogonal(L, derived)


@dataclass(frozen=True)
class LeviReport:
    direct_sum: bool
    r_solvable_ideal: bool
    s_semisimple_subalgebra: bool
    r_is_radical: bool
    killing_det_s: Fraction | None

    @property
    def passed(self) -> bool:
        return self.direct_sum and self.r_solvable_ideal and self.s_semisimple_subalgebra and self.r_is_radical


def verify_levi(L: LieAlgebra, r: Subspace, s: Subspace) -> LeviReport:
    direct = r.dim + s.dim == L.dim and r.plus(s).dim == L.dim
    r_ok = L.is_ideal(r) and is_solvable_space(L, r)
    k_det = None
    s_ok = False
    if s.dim and L.is_subalgebra(s):
        k_det = det(killing_form(L.restrict(s)))
        s_ok = k_det != 0
    rad = radical(L)
    r_max = rad == r and is_solvable_space(L, rad) and L.is_ideal(rad)
    return LeviReport(direct, r_ok, s_ok, r_max, k_det)


def complement_indices(s: Subspace) -> list[int]:
    """Standard basis indices completing s (the non-pivot columns)."""
    pivots = [next(i for i, v in enumerate(row) if v) for row in s.basis]
    return [i for i in range(s.ambient) if i not in pivots]


def reduce_modulo(v, s: Subspace) -> Vector:
    v = list(v)
    for row in s.basis:
        p = next(i for i, x in enumerate(row) if x)
        if v[p]:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


def quotient_by_center(L: LieAlgebra, labels=None):
    """g/z on the classes of the standard basis vectors not pivotal in z.

    Returns ``(algebra, images, project)`` where ``project`` maps a vector of
    L to coordinates in the quotient.
    """
    z = center(L)
    images = complement_indices(z)

    def project(v) -> Vector:
        red = reduce_modulo(v, z)
        return tuple(red[i] for i in images)

    consts = [[project(L.bracket(L.unit(i), L.unit(j))) for j in images] for i in images]
    labels = labels or [f"[{L.labels[i]}]" for i in images]
    return LieAlgebra(consts, labels), tuple(images), project


def killing_signature(L: LieAlgebra) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of the Killing form's inertia."""
    K = killing_form(L)
    n = L.dim
    m = [row[:] for row in K]
    pos = neg = 0
    # symmetric Gaussian elimination (congruence)
    idx = list(range(n))
    while idx:
        pivot = next((i for i in idx if m[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[pivot][pivot]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(pivot)
        for i in idx:
            f = m[i][pivot] / d
            if f:
                for k in range(n):
                    m[i][k] -= f * m[pivot][k]
                for k in range(n):
                    m[k][i] -= f * m[k][pivot]
    return pos, neg, n - pos - neg

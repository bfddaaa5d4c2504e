"""Immutable expression trees.

Nodes are frozen dataclasses, so structural equality and hashing come for
free.  The module-level helpers ``add``, ``mul`` and ``power`` fold constants
and flatten nested sums/products; the raw constructors do not, which lets the
parser build exactly the tree a piece of text denotes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import UnknownSymbol

BASE_VARS = ("x", "t", "u")
JETS = (
    "u_x", "u_t",
    "u_xx", "u_xt", "u_tt",
    "u_xxx", "u_xxt", "u_xtt", "u_ttt",
)
CONSTANT_SYMBOLS = ("C1", "C2", "eps", "a1", "a2", "a3", "a4")
ALPHABET = frozenset(BASE_VARS + JETS + CONSTANT_SYMBOLS)
NAMED_CONSTANTS = ("pi", "gamma")

FUNCTIONS = frozenset({
    "exp", "ln", "sqrt", "sin", "cos", "sinh", "cosh",
    "besselj0", "besselj1", "bessely0", "bessely1",
    "besseli0", "besseli1", "besselk0", "besselk1",
    "shi", "chi",
})

# opaque function symbols and the variables they depend on
FUNC_SYMBOLS: dict[str, tuple[str, ...]] = {
    "psi": ("x", "t"),
    "xi1": ("x", "t", "u"),
    "xi2": ("x", "t", "u"),
    "phi": ("x", "t", "u"),
    "F": ("u",),
    "G": ("u",),
}


def jet_name(multi: str) -> str:
    """Canonical jet coordinate for a derivative string such as ``"tx"``."""
    if not multi:
        return "u"
    return "u_" + "x" * multi.count("x") + "t" * multi.count("t")


def jet_order(name: str) -> int:
    if name == "u":
        return 0
    return len(name) - 2


class Expr:
    """Common base; arithmetic operators build folded trees."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return mul(self, power(as_expr(other), -1))

    def __rtruediv__(self, other):
        return mul(as_expr(other), power(self, -1))

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, Fraction(exponent))

    def __str__(self):
        from .printer import to_text

        return to_text(self)


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class NamedConst(Expr):
    name: str


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exp: Fraction

    def __post_init__(self):
        if not isinstance(self.exp, Fraction):
            object.__setattr__(self, "exp", Fraction(self.exp))


@dataclass(frozen=True)
class Apply(Expr):
    name: str
    args: tuple


@dataclass(frozen=True)
class FuncSym(Expr):
    """An opaque function such as psi(x,t) with derivatives already taken.

    ``derivs`` is a sorted tuple of ``(variable, count)`` pairs; differentiation
    order is irrelevant.
    """

    name: str
    args: tuple
    derivs: tuple = ()

    def order(self, var: str) -> int:
        return dict(self.derivs).get(var, 0)

    def differentiated(self, var: str) -> "FuncSym":
        d = dict(self.derivs)
        d[var] = d.get(var, 0) + 1
        return FuncSym(self.name, self.args, _sorted_derivs(d, self.args))


def _sorted_derivs(d: Mapping[str, int], args: tuple) -> tuple:
    return tuple((v, d[v]) for v in args if d.get(v))


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def const(value) -> Const:
    return Const(Fraction(value))


def var(name: str) -> Var:
    if name not in ALPHABET:
        raise UnknownSymbol(f"unknown variable {name!r}")
    return Var(name)


def func(name: str, derivs: Mapping[str, int] | None = None) -> FuncSym:
    if name not in FUNC_SYMBOLS:
        raise UnknownSymbol(f"unknown function symbol {name!r}")
    args = FUNC_SYMBOLS[name]
    d = dict(derivs or {})
    for v in d:
        if v not in args:
            raise UnknownSymbol(f"{name} does not depend on {v!r}")
    return FuncSym(name, args, _sorted_derivs(d, args))


def apply(name: str, *args) -> Apply:
    if name not in FUNCTIONS:
        raise UnknownSymbol(f"unknown function {name!r}")
    return Apply(name, tuple(as_expr(a) for a in args))


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Const(Fraction(value))
    if isinstance(value, str):
        from .parser import parse

        return parse(value)
    raise TypeError(f"cannot convert {value!r} to an expression")


def add(*terms: Expr) -> Expr:
    flat: list[Expr] = []
    total = Fraction(0)
    const_at = None
    for term in terms:
        parts = term.terms if isinstance(term, Sum) else (term,)
        for p in parts:
            if isinstance(p, Const):
                total += p.value
                if const_at is None:
                    const_at = len(flat)
                    flat.append(p)
            else:
                flat.append(p)
    if const_at is not None:
        if total == 0:
            del flat[const_at]
        else:
            flat[const_at] = Const(total)
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def mul(*factors: Expr) -> Expr:
    flat: list[Expr] = []
    coeff = Fraction(1)
    for factor in factors:
        parts = factor.factors if isinstance(factor, Product) else (factor,)
        for p in parts:
            if isinstance(p, Const):
                if p.value == 0:
                    return ZERO
                coeff *= p.value
            else:
                flat.append(p)
    # the numeric coefficient always leads, matching how products print
    if coeff != 1 or not flat:
        flat.insert(0, Const(coeff))
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def neg(e: Expr) -> Expr:
    return mul(Const(Fraction(-1)), e)


def rational_root(q: Fraction, r: Fraction) -> Fraction | None:
    """Exact value of q**r when it is rational, else None."""
    if r.denominator == 1:
        return q ** int(r)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0) if r > 0 else None
    d = r.denominator
    num = _int_root(q.numerator, d)
    den = _int_root(q.denominator, d)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** r.numerator


def _int_root(n: int, d: int) -> int | None:
    if n < 2:
        return n
    guess = round(n ** (1.0 / d))
    for g in (guess - 1, guess, guess + 1):
        if g >= 0 and g ** d == n:
            return g
    # floating guess can be off for large n; fall back to bisection
    lo, hi = 0, 1 << (n.bit_length() // d + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** d
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def power(base: Expr, exponent) -> Expr:
    exponent = Fraction(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const):
        if base.value == 0 and exponent < 0:
            from .errors import DivisionByZeroSymbolic

            raise DivisionByZeroSymbolic("0 raised to a negative power")
        value = rational_root(base.value, exponent)
        if value is not None:
            return Const(value)
    # (b^p)^n = b^(p n) for integer n wherever the left side is defined
    if isinstance(base, Power) and exponent.denominator == 1:
        return power(base.base, base.exp * exponent)
    return Power(base, exponent)


def free_symbols(e: Expr) -> frozenset:
    """Names of Var nodes appearing in ``e``."""
    out: set[str] = set()
    _walk_vars(e, out)
    return frozenset(out)


def _walk_vars(e, out):
    if isinstance(e, Var):
        out.add(e.name)
    elif isinstance(e, Sum):
        for s in e.terms:
            _walk_vars(s, out)
    elif isinstance(e, Product):
        for s in e.factors:
            _walk_vars(s, out)
    elif isinstance(e, Power):
        _walk_vars(e.base, out)
    elif isinstance(e, Apply):
        for s in e.args:
            _walk_vars(s, out)


def func_symbols(e: Expr) -> frozenset:
    """All FuncSym nodes (with their derivative indices) in ``e``."""
    out: set[FuncSym] = set()
    _walk_funcs(e, out)
    return frozenset(out)


def _walk_funcs(e, out):
    if isinstance(e, FuncSym):
        out.add(e)
    elif isinstance(e, Sum):
        for s in e.terms:
            _walk_funcs(s, out)
    elif isinstance(e, Product):
        for s in e.factors:
            _walk_funcs(s, out)
    elif isinstance(e, Power):
        _walk_funcs(e.base, out)
    elif isinstance(e, Apply):
        for s in e.args:
            _walk_funcs(s, out)


def subs(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace variables by expressions (simultaneously)."""
    mapping = {k: as_expr(v) for k, v in mapping.items()}
    return _subs(e, mapping)


def _subs(e, m):
    if isinstance(e, Var):
        return m.get(e.name, e)
    if isinstance(e, Sum):
        return add(*(_subs(s, m) for s in e.terms))
    if isinstance(e, Product):
        return mul(*(_subs(s, m) for s in e.factors))
    if isinstance(e, Power):
        return power(_subs(e.base, m), e.exp)
    if isinstance(e, Apply):
        return Apply(e.name, tuple(_subs(a, m) for a in e.args))
    return e


def subs_funcs(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace function symbols by concrete expressions.

    A FuncSym carrying derivatives is replaced by the matching partial
    derivative of its replacement.
    """
    from .calculus import diff

    cache: dict[FuncSym, Expr] = {}

    def value_of(fs: FuncSym) -> Expr:
        if fs not in cache:
            out = as_expr(mapping[fs.name])
            for v, n in fs.derivs:
                for _ in range(n):
                    out = diff(out, v)
            cache[fs] = out
        return cache[fs]

    def walk(node):
        if isinstance(node, FuncSym):
            return value_of(node) if node.name in mapping else node
        if isinstance(node, Sum):
            return add(*(walk(s) for s in node.terms))
        if isinstance(node, Product):
            return mul(*(walk(s) for s in node.factors))
        if isinstance(node, Power):
            return power(walk(node.base), node.exp)
        if isinstance(node, Apply):
            return Apply(node.name, tuple(walk(a) for a in node.args))
        return node

    return walk(e)


def sum_of(items: Iterable[Expr]) -> Expr:
    return add(*items)

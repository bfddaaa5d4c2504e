"""Canonical form: reduced rational functions over opaque atoms.

Atoms are variables, named constants, function symbols, elementary or
special-function applications (keyed by their normalised arguments) and
radicals of non-monomial bases.  Monomials carry rational exponents, so
x^(1/2) is simply x with exponent 1/2.  Products of exponentials merge into
a single exp atom.  Numerator/denominator pairs are cancelled with a
polynomial gcd and scaled so the leading denominator coefficient is 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from .errors import DivisionByZeroSymbolic
from .nodes import (
    BASE_VARS,
    CONSTANT_SYMBOLS,
    JETS,
    ONE,
    ZERO,
    Apply,
    Const,
    Expr,
    FuncSym,
    NamedConst,
    Power,
    Product,
    Sum,
    Var,
    rational_root,
)

_VAR_RANK = {name: i for i, name in enumerate(BASE_VARS + JETS + CONSTANT_SYMBOLS)}
_KIND_RANK = {"const": 0, "var": 1, "func": 2, "apply": 3, "root": 4}
_POSITIVE_VARS = frozenset({"x"})

# values of f(0) used to fold applications at zero
_AT_ZERO = {
    "exp": 1, "sin": 0, "cos": 1, "sinh": 0, "cosh": 1,
    "besselj0": 1, "besselj1": 0, "besseli0": 1, "besseli1": 0, "shi": 0,
}


class Atom:
    __slots__ = ("kind", "name", "args", "_hash", "_key")

    def __init__(self, kind: str, name: str, args: tuple = ()):
        self.kind = kind
        self.name = name
        self.args = args
        self._hash = hash((kind, name, args))
        self._key = None

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Atom)
            and self._hash == other._hash
            and self.kind == other.kind
            and self.name == other.name
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Atom({self.kind}, {self.name}, {self.args!r})"

    @property
    def key(self):
        if self._key is None:
            from .printer import to_text

            rank = _KIND_RANK[self.kind]
            if self.kind == "var":
                sub = (_VAR_RANK.get(self.name, len(_VAR_RANK)), self.name)
            elif self.kind == "func":
                sub = (self.name, str(self.args[1]))
            elif self.kind == "apply":
                sub = (self.name, ",".join(to_text(to_expr(a)) for a in self.args))
            elif self.kind == "root":
                sub = ("", to_text(to_expr(self.args[0])))
            else:
                sub = (self.name, "")
            self._key = (rank,) + sub
        return self._key

    @property
    def positive(self) -> bool:
        if self.kind == "var":
            return self.name in _POSITIVE_VARS
        if self.kind == "apply":
            return self.name in ("exp", "cosh")
        return self.kind in ("const", "root")

    @property
    def is_exp(self) -> bool:
        return self.kind == "apply" and self.name == "exp"


# -- monomials: sorted tuples of (Atom, Fraction) ---------------------------

def _mono_from_dict(d: dict) -> tuple:
    exps = [(a, e) for a, e in d.items() if e != 0 and a.is_exp]
    if len(exps) > 1 or (exps and exps[0][1] != 1):
        arg = RatFunc.zero()
        for a, e in exps:
            arg = arg + a.args[0] * RatFunc.const(e)
            del d[a]
        if not arg.is_zero():
            d[Atom("apply", "exp", (arg,))] = Fraction(1)
    items = [(a, e) for a, e in d.items() if e != 0]
    items.sort(key=lambda p: p[0].key)
    return tuple(items)


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for at, e in b:
        d[at] = d.get(at, 0) + e
    return _mono_from_dict(d)


def _term_key(mono: tuple):
    deg = sum((e for _, e in mono), Fraction(0))
    return (-deg, tuple((a.key, -e) for a, e in mono))


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


_ONE_POLY = {(): Fraction(1)}


class RatFunc:
    """Reduced numerator/denominator pair; build through the arithmetic ops."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: tuple, den: tuple):
        self.num = num
        self.den = den
        self._hash = hash((num, den))

    @staticmethod
    def const(c) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return RatFunc((), ((( ), Fraction(1)),))
        return RatFunc((((), c),), (((), Fraction(1)),))

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc.const(0)

    @staticmethod
    def atom(at: Atom, exponent=1) -> "RatFunc":
        exponent = Fraction(exponent)
        mono = _mono_from_dict({at: abs(exponent)})
        if exponent > 0:
            return _make({mono: Fraction(1)}, dict(_ONE_POLY))
        return _make(dict(_ONE_POLY), {mono: Fraction(1)})

    def __eq__(self, other):
        return self is other or (
            isinstance(other, RatFunc) and self._hash == other._hash
            and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RatFunc({to_expr(self)})"

    def is_zero(self) -> bool:
        return not self.num

    def constant_value(self):
        """The rational value if this is a constant, else None."""
        if not self.num:
            return Fraction(0)
        if self.den == (((), Fraction(1)),) and len(self.num) == 1 and self.num[0][0] == ():
            return self.num[0][1]
        return None

    def is_polynomial(self) -> bool:
        return self.den == (((), Fraction(1)),)

    def atoms(self) -> set:
        return {a for m, _ in self.num + self.den for a, _ in m}

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return _make(_poly_add(dict(self.num), dict(other.num)), dict(self.den))
        n = _poly_add(
            _poly_mul(dict(self.num), dict(other.den)),
            _poly_mul(dict(other.num), dict(self.den)),
        )
        return _make(n, _poly_mul(dict(self.den), dict(other.den)))

    def __neg__(self) -> "RatFunc":
        return RatFunc(tuple((m, -c) for m, c in self.num), self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        return _make(
            _poly_mul(dict(self.num), dict(other.num)),
            _poly_mul(dict(self.den), dict(other.den)),
        )

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZeroSymbolic("division by an expression that normalizes to 0")
        return _make(dict(self.den), dict(self.num))

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def _has_big_root(poly: dict) -> bool:
    return any(a.kind == "root" and e >= 1 for m in poly for a, e in m)


def _expand_roots(poly: dict) -> RatFunc:
    out = RatFunc.zero()
    for mono, c in poly.items():
        keep: dict = {}
        extra = RatFunc.const(c)
        for a, e in mono:
            if a.kind == "root" and e >= 1:
                whole = int(e)
                if e - whole:
                    keep[a] = e - whole
                extra = extra * a.args[0] ** whole
            else:
                keep[a] = e
        out = out + _make({_mono_from_dict(keep): Fraction(1)}, dict(_ONE_POLY)) * extra
    return out


def _make(num: dict, den: dict) -> RatFunc:
    num = {m: c for m, c in num.items() if c}
    den = {m: c for m, c in den.items() if c}
    if not den:
        raise DivisionByZeroSymbolic("zero denominator")
    if not num:
        return RatFunc.zero()
    if _has_big_root(num) or _has_big_root(den):
        return _expand_roots(num) / _expand_roots(den)

    if len(den) == 1:
        (m, c), = den.items()
        exp_part = tuple((a, -e) for a, e in m if a.is_exp)
        if exp_part:
            shift = _mono_from_dict(dict(exp_part))
            moved: dict = {}
            for mn, cn in num.items():
                k = mono_mul(mn, shift)
                moved[k] = moved.get(k, 0) + cn
            num = {k: v for k, v in moved.items() if v}
            den = {tuple((a, e) for a, e in m if not a.is_exp): c}
            if not num:
                return RatFunc.zero()
    return _finish(num, den)


def _finish(num: dict, den: dict) -> RatFunc:
    # cancel the common monomial factor
    terms = list(num) + list(den)
    common = dict(terms[0])
    for m in terms[1:]:
        md = dict(m)
        for a in list(common):
            e = min(common[a], md.get(a, Fraction(0)))
            if e <= 0:
                del common[a]
            else:
                common[a] = e
        if not common:
            break
    if common:
        num = {_mono_div(m, common): c for m, c in num.items()}
        den = {_mono_div(m, common): c for m, c in den.items()}

    if len(den) > 1:
        num, den = _poly_cancel(num, den)

    lead = min(den, key=_term_key)
    scale = den[lead]
    if scale != 1:
        num = {m: c / scale for m, c in num.items()}
        den = {m: c / scale for m, c in den.items()}
    return RatFunc(
        tuple(sorted(num.items(), key=lambda p: _term_key(p[0]))),
        tuple(sorted(den.items(), key=lambda p: _term_key(p[0]))),
    )


def _mono_div(m: tuple, common: dict) -> tuple:
    return tuple((a, e - common.get(a, 0)) for a, e in m if e != common.get(a, 0))


@lru_cache(maxsize=64)
def _ring(n: int) -> PolyRing:
    return PolyRing([f"g{i}" for i in range(n)], QQ, lex)


def _poly_cancel(num: dict, den: dict) -> tuple[dict, dict]:
    atoms = sorted({a for m in list(num) + list(den) for a, _ in m}, key=lambda a: a.key)
    if not atoms:
        return num, den
    scale = {}
    for a in atoms:
        denoms = [e.denominator for m in list(num) + list(den) for b, e in m if b == a]
        scale[a] = lcm(*denoms)
    index = {a: i for i, a in enumerate(atoms)}
    R = _ring(len(atoms))

    def encode(poly):
        out = {}
        for m, c in poly.items():
            exps = [0] * len(atoms)
            for a, e in m:
                exps[index[a]] = int(e * scale[a])
            out[tuple(exps)] = QQ(c.numerator, c.denominator)
        return R.from_dict(out)

    def decode(p):
        out = {}
        for exps, c in p.items():
            mono = tuple(
                (atoms[i], Fraction(k, scale[atoms[i]])) for i, k in enumerate(exps) if k
            )
            mono = tuple(sorted(mono, key=lambda q: q[0].key))
            out[mono] = Fraction(int(c.numerator), int(c.denominator))
        return out

    p, q = encode(num).cancel(encode(den))
    return decode(p), decode(q)


# -- conversion from and to expression trees --------------------------------

def _rf_power(base: RatFunc, r: Fraction) -> RatFunc:
    if r.denominator == 1:
        return base ** int(r)
    if base.is_zero():
        if r > 0:
            return RatFunc.zero()
        raise DivisionByZeroSymbolic("0 raised to a negative power")
    if len(base.num) == 1 and len(base.den) == 1:
        (mn, c), = base.num
        (md, _), = base.den
        mono = dict(mn)
        for a, e in md:
            mono[a] = mono.get(a, 0) - e
        single = c == 1 and len(mono) == 1 and next(iter(mono.values())) == 1
        if single or (c > 0 and all(a.positive for a in mono)):
            out = RatFunc.const(1)
            root = rational_root(c, r)
            if root is not None:
                out = RatFunc.const(root)
            else:
                out = RatFunc.atom(Atom("root", "", (RatFunc.const(c),)), r)
            pos = {a: e * r for a, e in mono.items() if e * r > 0}
            neg = {a: -e * r for a, e in mono.items() if e * r < 0}
            return out * _make({_mono_from_dict(pos): Fraction(1)}, {_mono_from_dict(neg): Fraction(1)})
    return RatFunc.atom(Atom("root", "", (base,)), r)


@lru_cache(maxsize=None)
def to_rf(e: Expr) -> RatFunc:
    """Canonical rational function of an expression tree."""
    if isinstance(e, Const):
        return RatFunc.const(e.value)
    if isinstance(e, NamedConst):
        return RatFunc.atom(Atom("const", e.name))
    if isinstance(e, Var):
        return RatFunc.atom(Atom("var", e.name))
    if isinstance(e, FuncSym):
        return RatFunc.atom(Atom("func", e.name, (e.args, e.derivs)))
    if isinstance(e, Sum):
        out = RatFunc.zero()
        for t in e.terms:
            out = out + to_rf(t)
        return out
    if isinstance(e, Product):
        out = RatFunc.const(1)
        for f in e.factors:
            out = out * to_rf(f)
            if out.is_zero():
                break
        return out
    if isinstance(e, Power):
        return _rf_power(to_rf(e.base), e.exp)
    if isinstance(e, Apply):
        args = tuple(to_rf(a) for a in e.args)
        if e.name == "sqrt":
            return _rf_power(args[0], Fraction(1, 2))
        if e.name in _AT_ZERO and args[0].is_zero():
            return RatFunc.const(_AT_ZERO[e.name])
        if e.name == "ln" and args[0].constant_value() == 1:
            return RatFunc.zero()
        return RatFunc.atom(Atom("apply", e.name, args))
    raise TypeError(f"not an expression: {e!r}")


def _atom_expr(a: Atom) -> Expr:
    if a.kind == "var":
        return Var(a.name)
    if a.kind == "const":
        return NamedConst(a.name)
    if a.kind == "func":
        return FuncSym(a.name, a.args[0], a.args[1])
    if a.kind == "apply":
        return Apply(a.name, tuple(to_expr(x) for x in a.args))
    return to_expr(a.args[0])


def _factor_list(mono: tuple, sign: int = 1) -> list:
    out = []
    for a, e in mono:
        base = _atom_expr(a)
        e = e * sign
        out.append(base if (e == 1 and a.kind != "root") else Power(base, e))
    return out


def _poly_expr(poly: tuple) -> Expr:
    terms = []
    for mono, c in poly:
        fs = _factor_list(mono)
        if c != 1 or not fs:
            fs.insert(0, Const(c))
        terms.append(fs[0] if len(fs) == 1 else Product(tuple(fs)))
    if not terms:
        return ZERO
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


@lru_cache(maxsize=None)
def to_expr(rf: RatFunc) -> Expr:
    """Expression tree of a canonical rational function."""
    num = _poly_expr(rf.num)
    if rf.is_polynomial():
        return num
    if len(rf.den) == 1:
        den_factors = _factor_list(rf.den[0][0], -1)
        if isinstance(num, Product):
            return Product(num.factors + tuple(den_factors))
        if num == ONE:
            return den_factors[0] if len(den_factors) == 1 else Product(tuple(den_factors))
        return Product((num, *den_factors))
    return Product((num, Power(_poly_expr(rf.den), Fraction(-1))))


def normalize(e: Expr) -> Expr:
    """Canonical form of ``e``; zero normalises to the literal 0."""
    return to_expr(to_rf(e))


def is_zero(e: Expr) -> bool:
    return to_rf(e).is_zero()


def constant_value(e: Expr):
    return to_rf(e).constant_value()


def collect(e: Expr, symbols) -> dict:
    """Coefficients of ``e`` viewed as a polynomial in the variables ``symbols``.

    Returns ``{exponent tuple: coefficient expression}``.  The variables must
    not appear in the denominator.
    """
    symbols = tuple(symbols)
    rf = to_rf(e)
    pos = {Atom("var", s): i for i, s in enumerate(symbols)}
    for m, _ in rf.den:
        for a, _ in m:
            if a in pos:
                raise ValueError(f"{a.name} appears in a denominator")
    groups: dict = {}
    for m, c in rf.num:
        exps = [0] * len(symbols)
        rest = []
        for a, k in m:
            if a in pos:
                if k.denominator != 1:
                    raise ValueError(f"non-integer power of {a.name}")
                exps[pos[a]] = int(k)
            else:
                rest.append((a, k))
        groups.setdefault(tuple(exps), {})[tuple(rest)] = c
    den = dict(rf.den)
    return {k: to_expr(_make(v, dict(den))) for k, v in groups.items()}


def linear_relations(exprs) -> list[list[Fraction]]:
    """Rows M such that sum_k c_k * exprs[k] == 0 iff M c == 0 (rational c)."""
    rfs = [to_rf(e) for e in exprs]
    dens: list[tuple] = []
    for rf in rfs:
        if rf.den not in dens:
            dens.append(rf.den)
    scaled = []
    for rf in rfs:
        poly = dict(rf.num)
        for d in dens:
            if d != rf.den:
                poly = _poly_mul(poly, dict(d))
        scaled.append(poly)
    monos = sorted({m for p in scaled for m in p}, key=_term_key)
    return [[p.get(m, Fraction(0)) for p in scaled] for m in monos]

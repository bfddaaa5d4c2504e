"""Partial differentiation on expression trees."""

from __future__ import annotations

from fractions import Fraction

from .errors import UnknownSymbol
from .nodes import (
    ALPHABET,
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
    add,
    mul,
    power,
)


def _call(name, g):
    return Apply(name, (g,))


def _outer_derivative(name: str, g: Expr) -> Expr:
    """d/dg of name(g)."""
    if name == "exp":
        return _call("exp", g)
    if name == "ln":
        return power(g, -1)
    if name == "sqrt":
        return mul(Const(Fraction(1, 2)), power(_call("sqrt", g), -1))
    if name == "sin":
        return _call("cos", g)
    if name == "cos":
        return mul(Const(Fraction(-1)), _call("sin", g))
    if name == "sinh":
        return _call("cosh", g)
    if name == "cosh":
        return _call("sinh", g)
    if name == "besselj0":
        return mul(Const(Fraction(-1)), _call("besselj1", g))
    if name == "bessely0":
        return mul(Const(Fraction(-1)), _call("bessely1", g))
    if name == "besseli0":
        return _call("besseli1", g)
    if name == "besselk0":
        return mul(Const(Fraction(-1)), _call("besselk1", g))
    if name in ("besselj1", "bessely1", "besseli1"):
        order0 = name[:-1] + "0"
        return add(_call(order0, g), mul(Const(Fraction(-1)), _call(name, g), power(g, -1)))
    if name == "besselk1":
        return add(
            mul(Const(Fraction(-1)), _call("besselk0", g)),
            mul(Const(Fraction(-1)), _call("besselk1", g), power(g, -1)),
        )
    if name == "shi":
        return mul(_call("sinh", g), power(g, -1))
    if name == "chi":
        return mul(_call("cosh", g), power(g, -1))
    raise UnknownSymbol(f"no derivative rule for {name!r}")


def diff(e: Expr, v: str) -> Expr:
    """Partial derivative of ``e`` with respect to the symbol ``v``.

    Jet coordinates and the other arguments of function symbols are
    independent of ``v``.
    """
    if v not in ALPHABET:
        raise UnknownSymbol(f"cannot differentiate with respect to {v!r}")
    return _d(e, v)


def _d(e: Expr, v: str) -> Expr:
    if isinstance(e, (Const, NamedConst)):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == v else ZERO
    if isinstance(e, FuncSym):
        return e.differentiated(v) if v in e.args else ZERO
    if isinstance(e, Sum):
        return add(*(_d(t, v) for t in e.terms))
    if isinstance(e, Product):
        terms = []
        fs = e.factors
        for i, f in enumerate(fs):
            df = _d(f, v)
            if df == ZERO:
                continue
            terms.append(mul(*fs[:i], df, *fs[i + 1:]))
        return add(*terms)
    if isinstance(e, Power):
        db = _d(e.base, v)
        if db == ZERO:
            return ZERO
        return mul(Const(e.exp), power(e.base, e.exp - 1), db)
    if isinstance(e, Apply):
        if len(e.args) != 1:
            raise UnknownSymbol(f"{e.name} takes one argument")
        g = e.args[0]
        dg = _d(g, v)
        if dg == ZERO:
            return ZERO
        return mul(_outer_derivative(e.name, g), dg)
    raise TypeError(f"not an expression: {e!r}")

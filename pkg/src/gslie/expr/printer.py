"""Text rendering that re-parses under the grammar in ``parser``."""

from __future__ import annotations

from fractions import Fraction

from .nodes import Apply, Const, Expr, FuncSym, NamedConst, Power, Product, Sum, Var

# binding strength used for parenthesisation
_SUM, _PROD, _UNARY, _POW, _ATOM = range(5)


def fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def funcsym_text(fs: FuncSym) -> str:
    suffix = "".join(v * n for v, n in fs.derivs)
    name = f"{fs.name}_{suffix}" if suffix else fs.name
    return f"{name}({','.join(fs.args)})"


def to_text(e: Expr) -> str:
    return _render(e)[0]


def _render(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        v = e.value
        if v < 0:
            return "-" + fraction_text(-v), _UNARY if v.denominator == 1 else _PROD
        return fraction_text(v), _ATOM if v.denominator == 1 else _PROD
    if isinstance(e, (Var, NamedConst)):
        return e.name, _ATOM
    if isinstance(e, FuncSym):
        return funcsym_text(e), _ATOM
    if isinstance(e, Apply):
        return f"{e.name}({', '.join(to_text(a) for a in e.args)})", _ATOM
    if isinstance(e, Power):
        if e.exp < 0:
            return _render_product((e,))
        return _render_power(e.base, e.exp), _POW
    if isinstance(e, Product):
        return _render_product(e.factors)
    if isinstance(e, Sum):
        return _render_sum(e.terms), _SUM
    raise TypeError(f"not an expression: {e!r}")


def _wrap(e: Expr, min_level: int) -> str:
    text, level = _render(e)
    return text if level >= min_level else f"({text})"


def _render_power(base: Expr, exp: Fraction) -> str:
    base_text = _wrap(base, _ATOM)
    if exp.denominator == 1 and exp > 0:
        return f"{base_text}^{exp.numerator}"
    return f"{base_text}^({fraction_text(exp)})"


def _render_product(factors: tuple) -> tuple[str, int]:
    if not factors:
        return "1", _ATOM
    coeff = Fraction(1)
    num: list[Expr] = []
    den: list[Expr] = []
    for f in factors:
        if isinstance(f, Const):
            coeff *= f.value
        elif isinstance(f, Power) and f.exp < 0:
            den.append(f.base if f.exp == -1 else Power(f.base, -f.exp))
        else:
            num.append(f)
    parts = [_wrap(f, _POW) for f in num]
    sign = "-" if coeff < 0 else ""
    mag = abs(coeff)
    if mag != 1 or not parts:
        parts.insert(0, fraction_text(mag))
    text = "*".join(parts)
    if den:
        den_text = "*".join(_wrap(f, _POW) for f in den)
        if len(den) > 1:
            den_text = f"({den_text})"
        text = f"{text}/{den_text}"
    if sign:
        return sign + text, _UNARY
    return text, _PROD


def _render_sum(terms: tuple) -> str:
    if not terms:
        return "0"
    out = []
    for i, term in enumerate(terms):
        text, level = _render(term)
        if level == _SUM:
            text = f"({text})"
        if i == 0:
            out.append(text)
        elif text.startswith("-"):
            out.append(" - " + text[1:])
        else:
            out.append(" + " + text)
    return "".join(out)

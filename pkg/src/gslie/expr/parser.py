"""Recursive-descent parser for the expression grammar.

    expr   := term { ("+"|"-") term }
    term   := factor { ("*"|"/") factor }
    factor := ["-"] base ["^" factor]
    base   := NUMBER | IDENT | IDENT "(" expr {"," expr} ")" | "(" expr ")"

``^`` binds tightest and is right-associative; its exponent must fold to a
rational constant.  Identifiers are checked against the variable alphabet,
the elementary/special function list and the opaque function symbols
(``psi``, ``xi1``, ``xi2``, ``phi``, ``F``, ``G``, optionally with a
derivative suffix such as ``xi2_tx``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExprSyntaxError, UnknownSymbol
from .nodes import (
    ALPHABET,
    FUNC_SYMBOLS,
    FUNCTIONS,
    NAMED_CONSTANTS,
    Apply,
    Const,
    Expr,
    FuncSym,
    NamedConst,
    Power,
    Product,
    Var,
    _sorted_derivs,
    add,
    mul,
    power,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))"
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                offset = pos + len(rest) - len(rest.lstrip())
                raise ExprSyntaxError(f"unexpected character {text[offset]!r}", _byte_offset(text, offset))
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.items.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.items[self.i]

    def next(self):
        tok = self.items[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value or kind == "end":
            raise ExprSyntaxError(f"unexpected {text or 'end of input'!r}", _byte_offset(self.text, pos), [value])


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree."""
    toks = _Tokens(text)
    e = _expr(toks)
    kind, value, pos = toks.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {value!r}", _byte_offset(text, pos), ["+", "-", "*", "/", "^", "end of input"])
    return e


def _expr(toks: _Tokens) -> Expr:
    terms = [_term(toks)]
    while toks.peek()[1] in ("+", "-") and toks.peek()[0] == "op":
        op = toks.next()[1]
        t = _term(toks)
        terms.append(t if op == "+" else mul(Const(Fraction(-1)), t))
    return add(*terms) if len(terms) > 1 else terms[0]


def _term(toks: _Tokens) -> Expr:
    factors = [_factor(toks)]
    while toks.peek()[1] in ("*", "/") and toks.peek()[0] == "op":
        op = toks.next()[1]
        f = _factor(toks)
        factors.append(f if op == "*" else power(f, -1))
    return mul(*factors) if len(factors) > 1 else factors[0]


def _factor(toks: _Tokens) -> Expr:
    negate = False
    if toks.peek()[:2] == ("op", "-"):
        toks.next()
        negate = True
    base = _base(toks)
    if toks.peek()[:2] == ("op", "^"):
        _, _, pos = toks.next()
        exponent = _factor(toks)
        value = _rational_value(exponent)
        if value is None:
            raise ExprSyntaxError("exponent must be a rational constant", _byte_offset(toks.text, pos))
        base = power(base, value)
    if negate:
        return mul(Const(Fraction(-1)), base)
    return base


def _rational_value(e: Expr):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Product) and all(isinstance(f, Const) for f in e.factors):
        out = Fraction(1)
        for f in e.factors:
            out *= f.value
        return out
    if isinstance(e, Power) and isinstance(e.base, Const) and e.exp.denominator == 1:
        return e.base.value ** int(e.exp)
    return None


def _base(toks: _Tokens) -> Expr:
    kind, value, pos = toks.next()
    if kind == "num":
        return Const(Fraction(value))
    if kind == "ident":
        if toks.peek()[:2] == ("op", "("):
            toks.next()
            args = [_expr(toks)]
            while toks.peek()[:2] == ("op", ","):
                toks.next()
                args.append(_expr(toks))
            toks.expect(")")
            return _call(value, args, toks.text, pos)
        if value in ALPHABET:
            return Var(value)
        if value in NAMED_CONSTANTS:
            return NamedConst(value)
        raise UnknownSymbol(f"unknown symbol {value!r} at offset {_byte_offset(toks.text, pos)}")
    if (kind, value) == ("op", "("):
        e = _expr(toks)
        toks.expect(")")
        return e
    raise ExprSyntaxError(
        f"unexpected {value or 'end of input'!r}",
        _byte_offset(toks.text, pos),
        ["number", "identifier", "(", "-"],
    )


def _call(name: str, args: list[Expr], text: str, pos: int) -> Expr:
    if name in FUNCTIONS:
        return Apply(name, tuple(args))
    base, _, suffix = name.partition("_")
    if base in FUNC_SYMBOLS:
        params = FUNC_SYMBOLS[base]
        if tuple(args) != tuple(Var(p) for p in params):
            raise ExprSyntaxError(
                f"{base} must be applied to ({','.join(params)})", _byte_offset(text, pos)
            )
        counts: dict[str, int] = {}
        for ch in suffix:
            if ch not in params:
                raise UnknownSymbol(f"{base} has no argument {ch!r}")
            counts[ch] = counts.get(ch, 0) + 1
        return FuncSym(base, params, _sorted_derivs(counts, params))
    raise UnknownSymbol(f"unknown function {name!r} at offset {_byte_offset(text, pos)}")

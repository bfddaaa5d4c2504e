"""Total derivatives, vector fields, characteristics and the second prolongation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expr import ZERO, Const, Expr, Var, add, as_expr, diff, free_symbols, mul, normalize
from .expr.nodes import JETS, jet_name, jet_order

MAX_JET_ORDER = 3
MINUS_ONE = Const(Fraction(-1))


class OrderOverflow(ValueError):
    pass


def total_derivative(e: Expr, direction: str, max_order: int = MAX_JET_ORDER) -> Expr:
    """D_x or D_t of a function on jet space."""
    if direction not in ("x", "t"):
        raise ValueError(f"direction must be 'x' or 't', not {direction!r}")
    terms = [diff(e, direction)]
    for name in ("u",) + JETS:
        partial = diff(e, name)
        if partial == ZERO or normalize(partial) == ZERO:
            continue
        if jet_order(name) + 1 > max_order:
            raise OrderOverflow(f"D_{direction} of {name} leaves the order-{max_order} jet space")
        multi = "" if name == "u" else name[2:]
        terms.append(mul(Var(jet_name(multi + direction)), partial))
    return add(*terms)


@dataclass(frozen=True)
class VectorField:
    """xi1 d/dx + xi2 d/dt + phi d/du."""

    xi1: Expr
    xi2: Expr
    phi: Expr
    label: str = ""

    def __post_init__(self):
        for name in ("xi1", "xi2", "phi"):
            value = as_expr(getattr(self, name))
            object.__setattr__(self, name, value)
            jets = free_symbols(value) & set(JETS)
            if jets:
                raise ValueError(f"{name} contains jet coordinates {sorted(jets)}")

    @classmethod
    def parse(cls, xi1: str, xi2: str, phi: str, label: str = "") -> "VectorField":
        return cls(as_expr(xi1), as_expr(xi2), as_expr(phi), label)

    @property
    def components(self) -> tuple:
        return (self.xi1, self.xi2, self.phi)

    def __call__(self, f: Expr) -> Expr:
        """Action on a function of (x, t, u)."""
        return add(mul(self.xi1, diff(f, "x")), mul(self.xi2, diff(f, "t")), mul(self.phi, diff(f, "u")))

    def __add__(self, other: "VectorField") -> "VectorField":
        label = f"{self.label}+{other.label}" if self.label and other.label else ""
        return VectorField(*(add(a, b) for a, b in zip(self.components, other.components)), label)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scaled(-1)

    def scaled(self, c) -> "VectorField":
        c = as_expr(Fraction(c) if isinstance(c, (int, Fraction)) else c)
        return VectorField(*(mul(c, a) for a in self.components), "")

    def normalized(self) -> "VectorField":
        return VectorField(*(normalize(a) for a in self.components), self.label)

    def is_zero(self) -> bool:
        return all(normalize(a) == ZERO for a in self.components)

    def __str__(self):
        return f"({self.xi1})*d_x + ({self.xi2})*d_t + ({self.phi})*d_u"


def zero_field() -> VectorField:
    return VectorField(ZERO, ZERO, ZERO, "0")


def characteristic(v: VectorField) -> Expr:
    u_x, u_t = Var("u_x"), Var("u_t")
    return add(v.phi, mul(MINUS_ONE, v.xi1, u_x), mul(MINUS_ONE, v.xi2, u_t))


@dataclass(frozen=True)
class ProlongedField:
    base: VectorField
    phi_x: Expr
    phi_t: Expr
    phi_xx: Expr
    phi_xt: Expr
    phi_tt: Expr

    def coefficients(self) -> dict:
        return {
            "u_x": self.phi_x, "u_t": self.phi_t,
            "u_xx": self.phi_xx, "u_xt": self.phi_xt, "u_tt": self.phi_tt,
        }


def prolong2(v: VectorField) -> ProlongedField:
    """Second prolongation from D-derivatives of the characteristic.

    Third-order jets introduced by D^2 Q must cancel against the correction
    terms; this is checked rather than assumed.
    """
    q = characteristic(v)
    qx = total_derivative(q, "x")
    qt = total_derivative(q, "t")
    j = {n: Var(n) for n in JETS}
    xi1, xi2 = v.xi1, v.xi2

    def corr(a: str, b: str):
        return add(mul(xi1, j[a]), mul(xi2, j[b]))

    coeffs = {
        "phi_x": add(qx, corr("u_xx", "u_xt")),
        "phi_t": add(qt, corr("u_xt", "u_tt")),
        "phi_xx": add(total_derivative(qx, "x"), corr("u_xxx", "u_xxt")),
        "phi_xt": add(total_derivative(qt, "x"), corr("u_xxt", "u_xtt")),
        "phi_tt": add(total_derivative(qt, "t"), corr("u_xtt", "u_ttt")),
    }
    third = {"u_xxx", "u_xxt", "u_xtt", "u_ttt"}
    for name, value in coeffs.items():
        value = normalize(value)
        leftover = free_symbols(value) & third
        if leftover:
            raise AssertionError(f"{name} retains third-order jets {sorted(leftover)}")
        coeffs[name] = value
    return ProlongedField(v, **coeffs)


def apply_prolonged(p: ProlongedField, e: Expr) -> Expr:
    """pr^(2) X acting as a derivation on a second-order jet function."""
    terms = [mul(p.base.xi1, diff(e, "x")), mul(p.base.xi2, diff(e, "t")), mul(p.base.phi, diff(e, "u"))]
    for jet, coeff in p.coefficients().items():
        terms.append(mul(coeff, diff(e, jet)))
    return normalize(add(*terms))


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    """[V, W] componentwise as V(W.c) - W(V.c)."""
    comps = [normalize(add(v(b), mul(MINUS_ONE, w(a)))) for a, b in zip(v.components, w.components)]
    return VectorField(*comps, f"[{v.label},{w.label}]" if v.label and w.label else "")

"""The published symmetry generators, as data."""

from __future__ import annotations

from fractions import Fraction

from .jets import VectorField
from .model import GSEquation

X1 = VectorField.parse("0", "1", "0", "X1")
X2 = VectorField.parse("x", "t", "x^4/2", "X2")
X3 = VectorField.parse("0", "0", "u - x^4/8", "X3")
X4 = VectorField.parse("t*x", "(t^2 - x^2)/2", "t*(7*x^4 + 8*u)/16", "X4")

BASIS = (X1, X2, X3, X4)


def x5(psi: str = "psi(x,t)") -> VectorField:
    """psi(x,t) d/du; pass a concrete psi or keep the function symbol."""
    return VectorField.parse("0", "0", psi, f"X5[{psi}]")


PSI_SAMPLES = ("t", "x^2", "x^2*t")


def power_case_q(q: int):
    """F = u^(1+2/q), G = u^(1+1/q) with field x d/dx + t d/dt - 2 q u d/du."""
    q = Fraction(q)
    eq = GSEquation.of(-1, 2, f"u^({1 + 2 / q})", f"u^({1 + 1 / q})")
    return eq, VectorField.parse("x", "t", f"{-2 * q}*u", f"Xq[q={q}]")


def new_symmetry_cases():
    """(label, equation, field) for the extra symmetries of special F, G."""
    cases = [
        ("exp: F=exp(2u), G=exp(u)", GSEquation.of(-1, 2, "exp(2*u)", "exp(u)"),
         VectorField.parse("x", "t", "-2", "Xexp")),
    ]
    for q in (1, -2, 3):
        eq, field = power_case_q(q)
        cases.append((f"power q={q}", eq, field))
    cases.append(("F=1, G=u", GSEquation.of(-1, 2, "1", "u"), VectorField.parse("0", "0", "x^2 + u", "Xlin")))
    return cases


# (field, invariant) pairs; each invariant is annihilated by its field
INVARIANTS = (
    (X2, "t/x"),
    (X2, "u - x^4/8"),
    (X4, "(t^2 + x^2)/x"),
    (X4, "(8*u - x^4)/(8*sqrt(x))"),
    (X2 + X3, "t/x"),
    (X2 + X3, "(8*u - x^4)/(8*x)"),
    (X1 + X3, "x"),
    (X1 + X3, "-(x^4 - 8*u)*exp(-t)/8"),
)

"""The equation family u_xx + (a/x) u_x + u_tt = x^p F(u) + G(u) and its symmetry tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .expr import (
    ZERO,
    Const,
    Expr,
    Var,
    add,
    as_expr,
    collect,
    diff,
    equiv,
    free_symbols,
    func,
    func_symbols,
    mul,
    normalize,
    power,
    subs,
    to_text,
)
from .expr.numeric import FuncCallback
from .jets import MINUS_ONE, VectorField, apply_prolonged, prolong2


class ExcludedEquation(ValueError):
    """a = 0 with p = 0 or F = 0: the nonlinear Laplace case, outside the classification."""


class MultipleFuncSyms(ValueError):
    pass


@dataclass(frozen=True)
class GSEquation:
    a: Fraction
    p: Fraction
    F: Expr
    G: Expr

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "p", Fraction(self.p))
        for name in ("F", "G"):
            value = as_expr(getattr(self, name))
            object.__setattr__(self, name, value)
            extra = free_symbols(value) - {"u"}
            if extra:
                raise ValueError(f"{name} may depend on u only, found {sorted(extra)}")
        if self.a == 0 and (self.p == 0 or normalize(self.F) == ZERO):
            raise ExcludedEquation("a = 0 together with p = 0 or F = 0 is the nonlinear Laplace equation")

    @classmethod
    def of(cls, a, p, F, G) -> "GSEquation":
        return cls(Fraction(a), Fraction(p), as_expr(F), as_expr(G))

    def __str__(self):
        return f"GS(a={self.a}, p={self.p}, F={to_text(self.F)}, G={to_text(self.G)})"


GRAD_SHAFRANOV = GSEquation.of(-1, 2, "1", "0")


def generic_equation(a=-1, p=2) -> GSEquation:
    """Equation with opaque F(u), G(u)."""
    return GSEquation(Fraction(a), Fraction(p), func("F"), func("G"))


def gs_delta(eq: GSEquation) -> Expr:
    x = Var("x")
    return add(
        Var("u_xx"),
        mul(Const(eq.a), power(x, -1), Var("u_x")),
        Var("u_tt"),
        mul(MINUS_ONE, power(x, eq.p), eq.F),
        mul(MINUS_ONE, eq.G),
    )


def solved_u_tt(eq: GSEquation) -> Expr:
    x = Var("x")
    return add(
        mul(power(x, eq.p), eq.F),
        eq.G,
        mul(MINUS_ONE, Var("u_xx")),
        mul(Const(-eq.a), power(x, -1), Var("u_x")),
    )


def on_shell_reduce(e: Expr, eq: GSEquation) -> Expr:
    """Substitute u_tt from the equation and normalise."""
    return normalize(subs(e, {"u_tt": solved_u_tt(eq)}))


def symmetry_residual(v: VectorField, eq: GSEquation) -> Expr:
    return on_shell_reduce(apply_prolonged(prolong2(v), gs_delta(eq)), eq)


@dataclass(frozen=True)
class SymmetryReport:
    field: VectorField
    equation: GSEquation
    residual: Expr
    verdict: object

    @property
    def accepted(self) -> bool:
        from .expr import is_zero_verdict

        return is_zero_verdict(self.verdict)


def is_symmetry(
    v: VectorField,
    eq: GSEquation,
    seed: int = 0,
    samples: int = 200,
    tol: float = 1e-9,
    funcs: Optional[Mapping[str, FuncCallback]] = None,
    ranges: Optional[Mapping[str, tuple]] = None,
) -> SymmetryReport:
    residual = symmetry_residual(v, eq)
    verdict = equiv(residual, ZERO, seed=seed, samples=samples, tol=tol, funcs=funcs, ranges=ranges)
    return SymmetryReport(v, eq, residual, verdict)


GENERIC_FIELD = VectorField(func("xi1"), func("xi2"), func("phi"), "generic")

# total degree, then lexicographic in this order
DETERMINING_JETS = ("u_x", "u_t", "u_xx", "u_xt")


def determining_system(eq: GSEquation) -> list[tuple[Expr, Expr]]:
    """Jet monomials of the on-shell invariance condition with their coefficients.

    Each coefficient, set to zero, is one determining equation for the
    unknown xi1(x,t,u), xi2(x,t,u), phi(x,t,u).
    """
    residual = symmetry_residual(GENERIC_FIELD, eq)
    groups = collect(residual, DETERMINING_JETS)
    ordered = sorted(groups, key=lambda k: (sum(k), tuple(-e for e in k)))
    out = []
    for exps in ordered:
        coeff = groups[exps]
        if normalize(coeff) == ZERO:
            continue
        mono = mul(*(power(Var(n), e) for n, e in zip(DETERMINING_JETS, exps) if e))
        out.append((mono, coeff))
    return out


def constraint_for_function_symbol(v: VectorField, eq: GSEquation) -> Expr:
    """The condition on the field's single function symbol making it a symmetry."""
    names = {f.name for c in v.components for f in func_symbols(c)}
    if len(names) != 1:
        raise MultipleFuncSyms(f"expected exactly one function symbol, found {sorted(names)}")
    return symmetry_residual(v, eq)


def verify_invariant(v: VectorField, invariant: Expr, seed: int = 0, samples: int = 200, tol: float = 1e-9, ranges=None):
    invariant = as_expr(invariant)
    jets = free_symbols(invariant) - {"x", "t", "u", "C1", "C2"}
    if jets:
        raise ValueError(f"invariant must not contain {sorted(jets)}")
    return equiv(v(invariant), ZERO, seed=seed, samples=samples, tol=tol, ranges=ranges)


def criterion_coefficients(eq: GSEquation) -> dict[str, Expr]:
    """Coefficients of xi1, phi and the prolonged phi's in pr X(Delta).

    For equations with F(u), G(u) the phi coefficient is -x^p F'(u) - G'(u);
    the xi1 coefficient is the explicit x-derivative of Delta.
    """
    delta = gs_delta(eq)
    out = {"xi1": normalize(diff(delta, "x")), "xi2": normalize(diff(delta, "t")), "phi": normalize(diff(delta, "u"))}
    for jet in ("u_x", "u_t", "u_xx", "u_xt", "u_tt"):
        out["phi_" + jet[2:]] = normalize(diff(delta, jet))
    return out

"""Re-derive every frozen reference value through the sympy/mpmath oracles."""

import mpmath
import pytest
import sympy as sp

import frozen
import oracles as O
from oracles import C1, C2, eps, t, u, x

psi = sp.Function("psi")(x, t)


def S(text):
    return sp.sympify(text.replace("^", "**").replace("psi_xx(x,t)", "Derivative(psi(x,t),x,2)")
                      .replace("psi_tt(x,t)", "Derivative(psi(x,t),t,2)")
                      .replace("psi_x(x,t)", "Derivative(psi(x,t),x)"),
                      locals={"psi": sp.Function("psi"), "x": x, "t": t, "u": u, "eps": eps})


def test_structure_constants():
    c = O.structure_constants()
    assert [[[sp.Rational(v) for v in cell] for cell in row] for row in frozen.STRUCTURE] == c


def test_bracket_x1_x4():
    br = O.bracket(O.GENERATORS[0], O.GENERATORS[3])
    assert all(sp.simplify(a - S(b)) == 0 for a, b in zip(br, frozen.BRACKET_X1_X4))


def test_partial_x_residual():
    r = O.symmetry_residual(sp.Integer(1), sp.Integer(0), sp.Integer(0))
    assert sp.simplify(r - S(frozen.PARTIAL_X_RESIDUAL)) == 0


def test_prolong_x3():
    q = u - x ** 4 / 8
    phi_x = O.total(q, x)
    phi_xx = O.total(O.total(q, x), x)
    assert sp.simplify(phi_x - S(frozen.PROLONG_X3["phi_x"])) == 0
    assert sp.simplify(phi_xx - S(frozen.PROLONG_X3["phi_xx"])) == 0


@pytest.mark.parametrize("phi, F, G, key", [
    (psi, 1, 0, "X5_CONSTRAINT"),
    (u + psi, u, 1, "U_PLUS_PSI_CONSTRAINT"),
    (psi, 1, u, "PSI_LINEAR_CONSTRAINT"),
])
def test_constraints(phi, F, G, key):
    r = O.symmetry_residual(sp.Integer(0), sp.Integer(0), phi, F=sp.sympify(F), G=sp.sympify(G))
    assert sp.simplify(r - S(getattr(frozen, key))) == 0


def test_generators_are_symmetries():
    for g in O.GENERATORS:
        assert O.symmetry_residual(*g) == 0


def test_killing():
    c = O.structure_constants()
    K = O.killing(c)
    assert K == sp.Matrix(frozen.KILLING_FULL)
    assert K.det() == frozen.KILLING_DET_FULL
    s = sp.Matrix([[1, 0, 0, 0], [0, 1, sp.Rational(1, 2), 0], [0, 0, 0, 1]]).T
    # restricted form on the Levi factor, in the ambient trace form
    assert (s.T * K * s).det() == frozen.KILLING_DET_LEVI


def test_adjoint_matrices():
    c = O.structure_constants()
    for i, cols in frozen.ADJOINT.items():
        M = O.adjoint_matrix(c, i)
        for j, col in enumerate(cols):
            for k, entry in enumerate(col):
                assert sp.simplify(M[k, j] - S(entry)) == 0


def test_s5p_residual():
    r = O.solution_residual(x ** 4 + 4 * C1 * x ** 2 + C2)
    assert sp.simplify(r - S(frozen.S5P_RESIDUAL)) == 0


@pytest.mark.parametrize("which, third", [("computed", sp.Rational(1, 2)), ("printed", sp.Rational(1, 3))])
def test_classify_parameters(which, third):
    c = O.structure_constants()
    c[0][3] = [0, 1, third, 0]
    c[3][0] = [0, -1, -third, 0]
    v = sp.Matrix([1, 2, 3, 4]) / 4
    w = O.adjoint_matrix(c, 0) * v
    e = sp.solve(w[2], eps)[0]
    want_eps, (a, b) = frozen.CLASSIFY_1234[which]
    assert e == sp.Rational(want_eps.numerator, want_eps.denominator)
    w = w.subs(eps, e)
    assert (w[0], w[1], w[3]) == (sp.Rational(a.numerator, a.denominator), sp.Rational(b.numerator, b.denominator), 1)


def test_special_values():
    assert O.special("shi", 1) == pytest.approx(frozen.SHI_1, abs=1e-16)
    assert O.special("chi", 1) == pytest.approx(frozen.CHI_1, abs=1e-16)
    assert O.special("besselj1", 1) == pytest.approx(frozen.BESSELJ1_1, abs=1e-16)
    assert float(mpmath.euler) == frozen.EULER_GAMMA

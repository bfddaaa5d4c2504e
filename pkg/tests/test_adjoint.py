import math
import random
from fractions import Fraction as Q

import pytest

import frozen
from gslie.adjoint import (
    CLASS_IDS,
    EPS,
    CanonicalClass,
    Conjugate,
    Scale,
    ZeroElement,
    ad_matrix,
    adjoint_exp,
    adjoint_table,
    apply_witness,
    classify,
    diff_adjoint_table,
    replay_error,
)
from gslie.algebra import from_vector_fields, matmul
from gslie.expr import ZERO, Var, add, const, mul, normalize, parse
from gslie.generators import BASIS
from gslie.transcriptions import printed_adjoint_entry, printed_commutator_algebra


@pytest.fixture(scope="module")
def g():
    return from_vector_fields(BASIS)


def same(a, b):
    a = parse(a) if isinstance(a, str) else a
    b = parse(b) if isinstance(b, str) else b
    return normalize(add(a, mul(const(-1), b))) == ZERO


def diag(*d):
    return [[Q(d[i]) if i == j else Q(0) for j in range(len(d))] for i in range(len(d))]


def test_ad_matrices(g):
    assert ad_matrix(g.unit(1), g) == diag(-1, 0, 0, 1)
    assert ad_matrix(g.unit(2), g) == diag(0, 0, 0, 0)
    a1 = ad_matrix(g.unit(0), g)
    assert any(any(r) for r in matmul(a1, a1))
    assert not any(any(r) for r in matmul(matmul(a1, a1), a1))


def test_generator_kinds(g):
    assert [adjoint_exp(g, i).kind for i in range(4)] == ["nilpotent", "diagonal", "identity", "nilpotent"]


def test_table_matches_frozen(g):
    table = adjoint_table(g)
    for i, cols in frozen.ADJOINT.items():
        for j, col in enumerate(cols):
            assert all(same(a, b) for a, b in zip(table[i][j], col)), (i, j)


def test_printed_table_differences(g):
    printed = [[printed_adjoint_entry(i, j) for j in range(4)] for i in range(4)]
    kinds = {(d.row, d.col): d.kind for d in diff_adjoint_table(g, printed)}
    assert kinds == {
        ("X1", "X2"): "eps-sign", ("X1", "X4"): "eps-sign", ("X2", "X4"): "eps-sign",
        ("X1", "X3"): "entry", ("X2", "X1"): "entry", ("X4", "X1"): "entry", ("X4", "X2"): "entry",
    }


def _bracket_preserved(L, m, a, b, tol):
    def act(v):
        return [sum(m[i][j] * v[j] for j in range(4)) for i in range(4)]
    lhs = act(L.bracket(a, b))
    rhs = L.bracket(act(a), act(b))
    return all(abs(x - y) <= tol for x, y in zip(lhs, rhs))


@pytest.mark.parametrize("i", [0, 2, 3])
def test_nilpotent_maps_are_exact_automorphisms(g, i):
    amap = adjoint_exp(g, i)
    for eps in [Q(k, 3) - 3 for k in range(20)]:
        m = amap.matrix(eps)
        for a in range(4):
            for b in range(4):
                assert _bracket_preserved(g, m, g.unit(a), g.unit(b), 0)


def test_diagonal_map_is_an_automorphism(g):
    amap = adjoint_exp(g, 1)
    for eps in [k / 4 - 2.5 for k in range(20)]:
        m = amap.matrix(eps)
        for a in range(4):
            for b in range(4):
                assert _bracket_preserved(g, m, g.unit(a), g.unit(b), 1e-12)


def _mat_mul_expr(a, b):
    n = len(a)
    return [[normalize(add(*(mul(a[i][k], b[k][j]) for k in range(n)))) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("i", range(4))
def test_group_law(g, i):
    amap = adjoint_exp(g, i)
    s, t = Var("a1"), Var("a2")
    lhs = _mat_mul_expr(amap.closed_form(s), amap.closed_form(t))
    rhs = amap.closed_form(add(s, t))
    assert all(same(lhs[r][c], rhs[r][c]) for r in range(4) for c in range(4))


def test_identity_at_zero(g):
    for i in range(4):
        m = adjoint_exp(g, i).matrix(0)
        assert m == diag(1, 1, 1, 1)


# -- classification ---------------------------------------------------------

@pytest.mark.parametrize("v, cls, params", [
    ((1, 0, 0, 0), "X1", ()),
    ((-5, 0, 0, 0), "X1", ()),
    ((3, 2, 0, 0), "X2", ()),
    ((0, 0, 7, 0), "X3", ()),
    ((1, 0, 1, 0), "X3+X1", ()),
    ((4, 0, 2, 0), "X3+X1", ()),
    ((-1, 0, 3, 0), "X3-X1", ()),
    ((2, 3, 1, 0), "aX2+X3", (Q(3),)),
    ((0, 0, 1, 1), "aX1+bX2+X4", (Q(2), Q(-2))),
])
def test_classify_examples(g, v, cls, params):
    result = classify(v, g)
    assert result.cls.id == cls
    if params:
        assert result.cls.params == params
    assert replay_error(result, v, g) <= result.tolerance


def test_classify_1234_with_computed_constants(g):
    eps, (a, b) = frozen.CLASSIFY_1234["computed"]
    result = classify((1, 2, 3, 4), g)
    assert result.witness == (Scale(Q(1, 4)), Conjugate(0, eps))
    assert result.cls == CanonicalClass("aX1+bX2+X4", (a, b))
    assert replay_error(result, (1, 2, 3, 4), g) == 0


def test_classify_1234_with_printed_constants():
    L = printed_commutator_algebra()
    eps, (a, b) = frozen.CLASSIFY_1234["printed"]
    result = classify((1, 2, 3, 4), L)
    assert Conjugate(0, eps) in result.witness
    assert result.cls.params == (a, b)


def test_normalize_case1(g):
    result = classify((1, 2, 3, 4), g, normalize_case1=True)
    assert result.cls.id == "aX1+bX2+X4"
    assert result.cls.params[0] == 1.0
    assert replay_error(result, (1, 2, 3, 4), g) < 1e-12


def test_zero_vector(g):
    with pytest.raises(ZeroElement):
        classify((0, 0, 0, 0), g)


def test_random_vectors_land_in_a_class(g):
    rng = random.Random(7)
    seen = set()
    for _ in range(1000):
        # small integers so every branch shows up
        v = tuple(Q(rng.randint(-3, 3), rng.choice([1, 2])) * rng.choice([0, 1, 1]) for _ in range(4))
        if not any(v):
            continue
        result = classify(v, g)
        assert result.cls.id in CLASS_IDS
        assert replay_error(result, v, g) <= result.tolerance
        seen.add(result.cls.id)
    assert seen == set(CLASS_IDS)


def test_representatives_are_fixed_points(g):
    reps = [CanonicalClass(c) for c in ("X1", "X2", "X3", "X3-X1", "X3+X1")]
    reps += [CanonicalClass("aX2+X3", (Q(2),)), CanonicalClass("aX1+bX2+X4", (Q(1, 3), Q(-1)))]
    for rep in reps:
        v = rep.representative()
        result = classify(v, g)
        assert result.cls == rep
        assert result.witness == ()


def test_apply_witness_steps(g):
    v = (Q(1), Q(0), Q(0), Q(0))
    assert apply_witness((), v, g) == v
    assert apply_witness((Scale(Q(2)),), v, g) == (2, 0, 0, 0)
    out = apply_witness((Conjugate(1, math.log(2)),), v, g)
    assert out[0] == pytest.approx(2.0)


def test_eps_symbol_is_shared():
    assert EPS == Var("eps")

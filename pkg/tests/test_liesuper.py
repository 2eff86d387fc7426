import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superrep.liesuper import (
    ClassLabel, LieSuperalgebra, SupergroupTriple, abelian, affine2, algebra_from_json,
    algebra_to_json, build_gl_super, build_sl, build_so, build_sp, build_spo, center,
    check_axioms, classify_factor, derived, direct_sum, even_part, gram_rank, is_reductive_even,
    killing_form, odd_isotypic_split, sl2_adjoint_q0, spo_q_matrix,
)
from superrep.repcat import check_rep, standard_rep_spo
from superrep.superlinalg import Parity


def idx(g, label):
    return g.space.index(label)


@pytest.mark.parametrize("r,dims", [(1, (3, 2)), (2, (10, 4)), (3, (21, 6))])
def test_spo_dimensions(r, dims):
    assert build_spo(r).algebra.dims == dims


@pytest.mark.parametrize("r", [1, 2, 3])
def test_spo_axioms_and_matrix_model(r):
    g = build_spo(r).algebra
    assert check_axioms(g) == []
    # the structure constants must agree with the defining matrix action on k^{1|2r}
    assert check_rep(standard_rep_spo(r, g)) == []


def test_sign_flip_is_detected():
    g = build_spo(1).algebra
    v1, v2 = idx(g, "v1"), idx(g, "v2")
    table = dict(g.table)
    table[(v1, v2)] = {k: -x for k, x in table[(v1, v2)].items()}
    table[(v2, v1)] = {k: -x for k, x in table[(v2, v1)].items()}
    bad = check_axioms(LieSuperalgebra(g.space, table, g.cartan, "broken"))
    assert bad
    assert all(v.kind == "jacobi" for v in bad)
    assert any(set(v.indices) >= {v1, v2} for v in bad)


def test_antisymmetry_violation_is_reported():
    g = build_sl(2)
    table = dict(g.table)
    table[(1, 0)] = {k: 2 * x for k, x in table[(1, 0)].items()}
    bad = check_axioms(LieSuperalgebra(g.space, table, (), "bad"))
    assert any(v.kind == "antisymmetry" and v.indices == (0, 1) for v in bad)


def test_abelian_is_valid():
    assert check_axioms(abelian(3, 2)) == []


@pytest.mark.parametrize("p,q", [(1, 0), (1, 1), (2, 1), (1, 2), (2, 2), (1, 3)])
def test_gl_super(p, q):
    g = build_gl_super(p, q).algebra
    assert g.dims == (p * p + q * q, 2 * p * q)
    assert check_axioms(g) == []


def test_gl11_q_by_hand():
    # A = (a) in Hom(V_-, V_+), B = (b) in Hom(V_+, V_-): {A, B} = AB + BA = diag(ab, ba)
    g = build_gl_super(1, 1).algebra
    a, b = Fraction(2, 3), 5
    out = g.bracket({idx(g, "E12"): a}, {idx(g, "E21"): b})
    assert out == {idx(g, "E11"): a * b, idx(g, "E22"): a * b}


@pytest.mark.parametrize("r", [1, 2, 3])
def test_spo_qvv_random(r):
    T = build_spo(r)
    g = T.algebra
    rng = random.Random(r)
    odd = g.odd_indices
    assert T.cubic_violations() == []
    for _ in range(20):
        v = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in odd]
        vec = {j: x for j, x in zip(odd, v) if x}
        assert T.qvv(vec) == {}


def test_spo_q_matches_matrix_formula():
    # the bracket [v, v] is the matrix Q(v)_{ab} = sum_c v_a v_c J_cb written in the sp basis
    r = 2
    g = build_spo(r).algebra
    v = [1, 2, -1, 3]
    Q = spo_q_matrix(r, v)
    vec = {g.odd_indices[k]: x for k, x in enumerate(v)}
    qv = g.bracket(vec, vec)
    # act on the standard module: the even part of Q(v) acts on w_b via its matrix
    R = standard_rep_spo(r, g)
    M = {}
    for k, c in qv.items():
        for col, img in enumerate(R.action[k].cols):
            for row, x in img.items():
                M[(row, col)] = M.get((row, col), 0) + c * x
    # rows/cols 1..2r of the standard module carry the sp action
    for a in range(2 * r):
        for b in range(2 * r):
            assert M.get((a + 1, b + 1), 0) == Q.get((a, b), 0)


def test_center_examples():
    assert center(build_spo(1).algebra) == []
    z = center(build_gl_super(1, 1).algebra)
    assert len(z) == 1


def test_derived_of_gl11():
    g = build_gl_super(1, 1).algebra
    assert len(derived(g)) == 3  # sl(1|1) has dimension 1|2


def test_killing_sp2():
    g = build_sp(1)
    K = killing_form(g)
    assert gram_rank([{i: 1} for i in range(3)], lambda x, y: sum(
        K[i][j] * a * b for i, a in x.items() for j, b in y.items())) == 3
    # trace(ad H ad H) = 8 for H = diag(1, -1)
    assert K[0][0] == 8


@pytest.mark.parametrize("g,expect", [
    (build_sp(1), True), (build_sp(2), True), (build_sp(3), True),
    (affine2(), False), (abelian(4), True),
])
def test_even_reductive(g, expect):
    assert is_reductive_even(g) is expect


def test_even_reductive_rejects_odd():
    with pytest.raises(ValueError):
        is_reductive_even(build_spo(1).algebra)


def test_split_spo_sum():
    g = direct_sum(build_spo(1).algebra, build_spo(2).algebra)
    ideals = odd_isotypic_split(g)
    assert sorted(i.algebra.dims for i in ideals) == [(3, 2), (10, 4)]
    assert sorted(str(classify_factor(i)) for i in ideals) == ["BC_1", "BC_2"]


def test_split_even_reductive():
    g = direct_sum(build_sl(2), build_sp(2), abelian(1))
    labels = sorted(str(classify_factor(i)) for i in odd_isotypic_split(g))
    assert labels == ["A_1", "C_2", "Torus(1)"]


def test_split_flags_sl2_adjoint():
    ideals = odd_isotypic_split(sl2_adjoint_q0())
    assert len(ideals) == 1 and ideals[0].degenerate
    assert classify_factor(ideals[0]).kind == "Unknown"


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_classify_spo(r):
    assert classify_factor(build_spo(r).algebra) == ClassLabel("BC", r)


@pytest.mark.parametrize("g,label", [
    (build_sp(2), "C_2"), (build_sl(3), "A_2"), (build_so(7), "B_3"), (build_sp(3), "C_3"),
    (build_so(8), "D_4"), (build_sl(4), "A_3"), (build_so(6), "A_3"),
])
def test_classify_even(g, label):
    # B_3 and C_3 share rank and dimension; so(6) is isomorphic to sl(4)
    assert str(classify_factor(g)) == label


def test_classlabel_ranges():
    with pytest.raises(ValueError):
        ClassLabel("B", 2)
    with pytest.raises(ValueError):
        ClassLabel("BC", 0)
    assert str(ClassLabel("E", 6)) == "E6"


def test_json_round_trip():
    g = build_spo(2).algebra
    h = algebra_from_json(algebra_to_json(g))
    assert h.table == g.table and h.space == g.space and h.cartan == g.cartan


def test_json_rejects_bad_order():
    data = algebra_to_json(build_spo(1).algebra)
    data["basis"] = data["basis"][::-1]
    with pytest.raises(ValueError):
        algebra_from_json(data)


SMALL = [lambda: build_spo(1).algebra, lambda: build_sl(2), lambda: abelian(1),
         lambda: build_gl_super(1, 1).algebra, lambda: abelian(0, 1), affine2]


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from(range(len(SMALL))), min_size=2, max_size=3))
def test_direct_sums_distribute(choice):
    parts = [SMALL[k]() for k in choice]
    g = direct_sum(*parts)
    assert check_axioms(g) == []
    assert g.dims == (sum(p.even_dim for p in parts), sum(p.odd_dim for p in parts))
    assert len(center(g)) == sum(len(center(p)) for p in parts)
    assert len(derived(g)) == sum(len(derived(p)) for p in parts)


def test_even_part():
    h = even_part(build_spo(2).algebra)
    assert h.dims == (10, 0)
    assert all(p is Parity.EVEN for p in h.space.parities)

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from superrep.hopfmodel import (
    HopfAxiomError, build_model, builtin_model, check_comodule, check_hopf, choose_thetas,
    cyclic_table, euler_split, ideal_power, invariant_subalgebra, kappa, lie_of, model_from_json,
    model_to_json, quotient_by_radical, radical, radical_filtration, s3_table,
)
from superrep.superlinalg import Parity

MODELS = [("trivial", 1), ("trivial", 2), ("trivial", 3), ("z2", 1), ("z2", 2), ("z2", 3),
          ("z3", 1), ("z3", 2), ("z3", 3), ("s3", 1), ("s3", 2), ("s3", 3)]


def test_trivial_group_is_exterior_algebra():
    A = builtin_model("trivial", 2)
    assert A.space.dims == (2, 2)
    # θ1 θ2 = -θ2 θ1 and θ1² = 0
    t1, t2 = A.theta(0), A.theta(1)
    assert A.mul(t1, t2) == {k: -v for k, v in A.mul(t2, t1).items()}
    assert A.mul(t1, t1) == {}


def test_z2_dimensions():
    A = builtin_model("z2", 1)
    assert A.dim == 4
    assert len(radical(A)) == 2


def test_s3_reflection_dimension():
    assert builtin_model("s3", 2).dim == 24


def test_s3_table_is_a_group():
    t = s3_table()
    assert sorted(map(sorted, t)) == [list(range(6))] * 6
    assert any(t[a][b] != t[b][a] for a in range(6) for b in range(6))


@pytest.mark.parametrize("gamma,s", MODELS)
def test_hopf_axioms(gamma, s):
    A = builtin_model(gamma, s, verify=False)
    rep = check_hopf(A)
    assert rep.ok, rep.failures[:3]
    assert check_comodule(quotient_by_radical(A)).ok


@pytest.mark.parametrize("gamma,s", MODELS)
def test_filtration_ranks(gamma, s):
    A = builtin_model(gamma, s, verify=False)
    levels = radical_filtration(A)
    assert [lv.rank for lv in levels] == [comb(s, n) for n in range(s + 1)]
    assert all(lv.free and lv.comodule_map for lv in levels)
    assert ideal_power(A, radical(A), s + 1) == []


@pytest.mark.parametrize("gamma,s", MODELS)
def test_invariant_subalgebra(gamma, s):
    A = builtin_model(gamma, s, verify=False)
    inv = invariant_subalgebra(A)
    assert len(inv) == 2 ** s
    levels = radical_filtration(A)
    assert len(inv) == sum(lv.rank for lv in levels)
    # rank of A as a free B-comodule
    assert A.dim // A.order == len(inv)


def test_trivial_group_invariants_are_everything():
    A = builtin_model("trivial", 3)
    assert len(invariant_subalgebra(A)) == A.dim


def test_lie_trivial_s2():
    lie = lie_of(builtin_model("trivial", 2))
    assert lie.algebra.dims == (0, 2)
    assert all(lie.checks.values())


@pytest.mark.parametrize("gamma,s", [("z2", 2), ("z3", 3), ("s3", 2)])
def test_lie_checks(gamma, s):
    A = builtin_model(gamma, s, verify=False)
    lie = lie_of(A)
    assert lie.algebra.dims == (0, s)
    assert all(lie.checks.values()), lie.checks


def test_kappa_trivial_s1():
    A = builtin_model("trivial", 1)
    assert kappa(A) == A.unit()


@pytest.mark.parametrize("gamma,s", [("z2", 2), ("z3", 2), ("s3", 2), ("s3", 3)])
def test_kappa_counit(gamma, s):
    A = builtin_model(gamma, s, verify=False)
    assert A.counit(kappa(A)) == 1


def test_euler_split_z2_s1():
    R = euler_split(builtin_model("z2", 1))
    assert R.btilde_dim == 2 and R.invariant_dim * R.btilde_dim == 4
    assert R.ok


@pytest.mark.parametrize("gamma,s", MODELS)
def test_euler_split(gamma, s):
    R = euler_split(builtin_model(gamma, s, verify=False))
    assert R.ok, R.to_json()
    assert R.euler_eigen and R.product_tensor_match
    assert R.open_question_identity


def test_thetas_are_odd_invariants():
    A = builtin_model("s3", 3, verify=False)
    B = quotient_by_radical(A)
    thetas = choose_thetas(A, B, invariant_subalgebra(A, B))
    assert len(thetas) == 3
    assert all(A.vparity(t) is Parity.ODD for t in thetas)


def test_bad_action_is_rejected():
    with pytest.raises(HopfAxiomError):
        build_model(cyclic_table(2), [((1,),), ((2,),)])


def test_bad_table_is_rejected():
    with pytest.raises(HopfAxiomError):
        build_model([[0, 1], [0, 1]], [((1,),), ((1,),)])


def test_json_generators_and_round_trip():
    data = {"group": cyclic_table(3), "generators": {"1": [["0", "-1"], ["1", "-1"]]}}
    A = model_from_json(data)
    B = model_from_json(model_to_json(A))
    assert A.rho == B.rho and A.table == B.table
    assert A.rho == builtin_model("z3", 2).rho


@settings(max_examples=8, deadline=None)
@given(st.integers(2, 4), st.integers(1, 2), st.integers(0, 3))
def test_cyclic_sign_actions(n, s, k):
    # Z/n acting on each θ by a sign character (only sensible for even n, else trivially)
    sgn = -1 if n % 2 == 0 and k % 2 else 1
    mats = [tuple(tuple((sgn ** g if i == j else 0) for j in range(s)) for i in range(s)) for g in range(n)]
    A = build_model(cyclic_table(n), mats)
    R = euler_split(A)
    assert R.ok
    assert R.ranks == [comb(s, m) for m in range(s + 1)]

from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from superrep.superlinalg import (
    Echelon, Parity, SuperMap, SuperSpace, format_rational, intersect, kernel_of_stack,
    normal_form, nullspace, parse_rational, power_operator, rank, supercommutator,
    supertrace, sym_power, sym_power_dim, tensor_space, vadd, wedge_power,
)


small = st.integers(min_value=-3, max_value=3)


def dense_rows(draw_rows):
    return [{j: x for j, x in enumerate(row) if x} for row in draw_rows]


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=5))


def test_parity_arithmetic():
    assert Parity.ODD + Parity.ODD is Parity.EVEN
    assert Parity.EVEN.flip() is Parity.ODD
    assert Parity.parse("odd") is Parity.ODD
    assert Parity.parse(2) is Parity.EVEN
    with pytest.raises(ValueError):
        Parity.parse("sideways")


def test_rational_io():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("4/2") == 2 and isinstance(parse_rational("4/2"), int)
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_vadd_drops_zeros():
    assert vadd({0: 1, 1: 2}, {0: -1}) == {1: 2}


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(dense_rows(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(rows):
    n = len(rows[0])
    ker = nullspace(dense_rows(rows), range(n))
    assert len(ker) == n - sympy.Matrix(rows).rank()
    for v in ker:
        for row in rows:
            assert sum(row[j] * v.get(j, 0) for j in range(n)) == 0


def test_echelon_coords_reconstruct():
    vecs = [{0: 1, 1: 2}, {1: 1, 2: -1}]
    ech = Echelon(vecs)
    target = {0: 3, 1: 7, 2: -1}
    c = ech.coords(target)
    rebuilt = {}
    for k, x in c.items():
        rebuilt = vadd(rebuilt, vecs[k], x)
    assert rebuilt == target
    assert not ech.contains({2: 1, 0: 5})


def test_intersect_of_planes():
    a = [{0: 1}, {1: 1}]
    b = [{1: 1}, {2: 1}]
    out = intersect(a, b)
    assert len(out) == 1 and Echelon(out).contains({1: 1})


def test_space_ordering_and_sdim():
    V = SuperSpace.build([("x", Parity.ODD), ("y", Parity.EVEN), ("z", Parity.ODD)])
    assert V.labels[0] == "y"
    assert V.dims == (1, 2) and V.sdim == -1


def test_supertrace_of_supercommutator_vanishes():
    V = SuperSpace.from_dims(2, 2)
    f = SuperMap.from_dense(V, V, [[0, 0, 1, 0], [0, 0, 0, 2], [3, 0, 0, 0], [0, 1, 0, 0]])
    g = SuperMap.from_dense(V, V, [[0, 0, 0, 1], [0, 0, 1, 0], [1, 1, 0, 0], [0, -1, 0, 0]])
    assert f.parity is Parity.ODD and g.parity is Parity.ODD
    assert supertrace(supercommutator(f, g)) == 0
    # [f, g] for odd maps is the anticommutator, which has nonzero ordinary trace here
    fg = supercommutator(f, g).to_dense()
    assert sum(fg[i][i] for i in range(4)) != 0


def test_kernel_of_stack_intersection():
    V = SuperSpace.from_dims(3, 0)
    f = SuperMap.from_dense(V, V, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    g = SuperMap.from_dense(V, V, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert kernel_of_stack([f, g]).dim == 1


def test_tensor_space_parity():
    V = SuperSpace.from_dims(1, 1)
    T, idx = tensor_space(V, V)
    assert T.dims == (2, 2)
    assert T.parity(idx[(1, 1)]) is Parity.EVEN


@pytest.mark.parametrize("even,odd,n", [(1, 2, 3), (2, 2, 4), (1, 4, 5), (3, 0, 2), (0, 3, 2)])
def test_sym_power_dims(even, odd, n):
    # generating function (1+t)^odd / (1-t)^even, expanded with sympy
    t = sympy.symbols("t")
    series = sympy.series((1 + t) ** odd / (1 - t) ** even, t, 0, n + 1).removeO()
    expect = int(series.coeff(t, n))
    P = sym_power(SuperSpace.from_dims(even, odd), n)
    assert P.space.dim == expect == sym_power_dim(even, odd, n)


def test_wedge_power_is_ordinary_exterior():
    V = SuperSpace.from_dims(0, 4)
    assert wedge_power(V, 2).space.dim == comb(4, 2)
    assert wedge_power(V, 2).space.dims == (6, 0)


def test_normal_form_signs():
    V = SuperSpace.from_dims(1, 2)  # index 0 even, 1 and 2 odd
    assert normal_form(V, (2, 1)) == (-1, (1, 2))
    assert normal_form(V, (1, 0)) == (1, (0, 1))
    assert normal_form(V, (1, 1)) == (0, None)
    assert normal_form(V, (0, 0)) == (1, (0, 0))
    assert normal_form(V, (0, 0), "wedge") == (0, None)


def test_power_operator_is_a_representation():
    # a ↦ induced derivation on Sym^2 respects supercommutators
    V = SuperSpace.from_dims(1, 2)
    f = SuperMap.from_dense(V, V, [[0, 1, 0], [0, 0, 0], [1, 0, 0]])
    g = SuperMap.from_dense(V, V, [[0, 0, 1], [1, 0, 0], [0, 0, 0]])
    P = sym_power(V, 2)
    lhs = power_operator(supercommutator(f, g), P)
    rhs = supercommutator(power_operator(f, P), power_operator(g, P))
    assert lhs == rhs

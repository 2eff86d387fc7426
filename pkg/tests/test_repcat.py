from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from superrep.liesuper import build_gl_super, build_sl, build_spo, even_part
from superrep.repcat import (
    NotSemisimpleError, Representation, SectorError, b_injective, check_rep, decompose, dual,
    epsilon_sector, even_invariants, filtration_sym, frobenius_dims, hom_space, induce,
    invariant_forms, invariant_quadric, invariants, is_simple, parity_shift, rep_from_json,
    rep_to_json, self_duality_type, standard_rep_spo, subrepresentation, superdim, sym_power_rep,
    tensor, trivial_rep,
)
from superrep.superlinalg import Parity, SuperMap, SuperSpace, sym_power_dim


def spo(r):
    return build_spo(r).algebra


def fundamental_dims(r, i):
    # (1bar^i ⊗ V_i)_+ = Λ^i(g_-), and the other parity is Λ^{i-1}
    top, low = comb(2 * r, i), comb(2 * r, i - 1) if i else 0
    return (top, low) if i % 2 == 0 else (low, top)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_standard_rep(r):
    V = standard_rep_spo(r)
    assert V.dims == (1, 2 * r)
    assert check_rep(V) == []
    assert superdim(V) == 1 - 2 * r
    assert invariants(V).dim == 0


@pytest.mark.parametrize("r", [1, 2, 3])
def test_standard_q_action(r):
    # ρ(Q(v)) = [ϕ(v), ϕ(v)] = 2 ϕ(v)² for every odd basis vector
    g = spo(r)
    V = standard_rep_spo(r, g)
    for j in g.odd_indices:
        phi = V.action[j]
        lhs = V.act(g.bracket({j: 1}, {j: 1})) if g.bracket({j: 1}, {j: 1}) else SuperMap.zero(V.space, V.space)
        assert lhs == (phi @ phi).scale(2)


def test_standard_is_simple():
    assert is_simple(standard_rep_spo(1))
    assert len(hom_space(standard_rep_spo(2), standard_rep_spo(2))) == 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_induced_trivial(r):
    g = spo(r)
    I = induce(g)
    assert I.dims == (2 ** (2 * r - 1), 2 ** (2 * r - 1))
    assert check_rep(I) == []
    # the even-part invariants count Sp(2r)-invariants in Λ(k^{2r}): 1, ω, ..., ω^r
    assert even_invariants(I).dim == r + 1
    assert invariants(I).dim == 1


def test_induce_purely_even_is_identity():
    g = build_sl(2)
    V = trivial_rep(g)
    I = induce(g, V)
    assert I.dims == (1, 0)


@pytest.mark.parametrize("r", [1, 2])
def test_frobenius(r):
    g = spo(r)
    k = trivial_rep(even_part(g))
    assert frobenius_dims(g, k, induce(g)) == (r + 1, r + 1)
    # e0 in the standard module is fixed by the even part, so both sides are 1
    assert frobenius_dims(g, k, standard_rep_spo(r, g)) == (1, 1)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_decompose_induced(r):
    I = induce(spo(r))
    rep = decompose(I)
    assert [c.label for c in rep.constituents] == [f"V_{i}" for i in range(r + 1)]
    by_label = {c.label: c for c in rep.constituents}
    for i in range(r + 1):
        c = by_label[f"V_{i}"]
        assert c.dims == fundamental_dims(r, i)
        assert c.multiplicity == 1
        assert c.sector == "T" and c.duality == "orthogonal"
        assert c.sdim != 0
    assert sum(c.dim for c in rep.constituents) == 4 ** r


@pytest.mark.parametrize("r", [1, 2])
def test_decompose_matches_commutant(r):
    # brute-force oracle: dim End_g(I(k)) = Σ m_i²
    I = induce(spo(r))
    rep = decompose(I)
    assert len(hom_space(I, I)) == sum(c.multiplicity ** 2 for c in rep.constituents)


def test_decompose_tensor_square():
    V = standard_rep_spo(1)
    rep = decompose(tensor(V, V))
    assert rep.dims == (5, 4)
    assert sum(c.multiplicity * c.sdim for c in rep.constituents) == superdim(V) ** 2


def test_decompose_rejects_non_semisimple():
    # over gl(1|1) the induced module of the trivial module is indecomposable of length 2
    g = build_gl_super(1, 1).algebra
    I = induce(g)
    assert check_rep(I) == []
    assert len(hom_space(I, I)) == 2  # End contains a nilpotent, so I is not semisimple
    with pytest.raises(NotSemisimpleError):
        decompose(I)


def test_parity_shift_properties():
    V = standard_rep_spo(2)
    P = parity_shift(V)
    assert check_rep(P) == []
    assert superdim(P) == -superdim(V)
    PP = parity_shift(P)
    assert PP.dims == V.dims and len(hom_space(PP, V)) == 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_duality_types(r):
    V = standard_rep_spo(r)
    assert self_duality_type(V) == "orthogonal"
    assert self_duality_type(parity_shift(V)) == "symplectic"


def test_standard_form_blocks():
    # b is supersymmetric: symmetric on V_+, antisymmetric on V_-
    V = standard_rep_spo(2)
    forms = invariant_forms(V)
    assert len(forms.supersymmetric) == 1 and not forms.antisymmetric
    b = forms.supersymmetric[0]
    pars = V.space.parities
    for (a, c), x in b.items():
        assert pars[a] == pars[c]
        s = -1 if pars[a] is Parity.ODD else 1
        assert b.get((c, a)) == s * x


def test_dual_of_standard():
    V = standard_rep_spo(2)
    D = dual(V)
    assert check_rep(D) == []
    assert len(hom_space(D, V)) == 1


def test_tensor_superdim_multiplicative():
    V = standard_rep_spo(1)
    W = parity_shift(standard_rep_spo(1, V.algebra))
    T = tensor(V, W)
    assert check_rep(T) == []
    assert superdim(T) == superdim(V) * superdim(W)


@pytest.mark.parametrize("r", [1, 2])
def test_sym_powers_match_induced(r):
    V = standard_rep_spo(r)
    target = decompose(induce(V.algebra)).signature()
    for n in (2 * r, 2 * r + 1):
        S = sym_power_rep(V, n)
        assert S.dim == sym_power_dim(1, 2 * r, n) == 4 ** r
        assert decompose(S).signature() == target


@pytest.mark.parametrize("r", [1, 2, 3])
def test_b_injective(r):
    V = standard_rep_spo(r)
    b, _ = invariant_quadric(V)
    assert b
    for n in range(2 * r):
        assert b_injective(V, n)


@pytest.mark.parametrize("r,labels", [(1, ["V_1", "V_0"]), (2, ["V_1", "V_2", "V_0"])])
def test_filtration(r, labels):
    steps = filtration_sym(standard_rep_spo(r), r)
    assert [s.label for s in steps] == labels
    for s in steps:
        assert s.simple and s.odd_matches_wedge and s.even_matches_wedge
    assert len(set(labels)) == len(labels)


def test_sectors():
    V = standard_rep_spo(2)
    assert epsilon_sector(V) == "T"
    assert epsilon_sector(parity_shift(V)) == "Pi_T"
    mixed = Representation(V.algebra, SuperSpace.from_dims(2, 0), tuple(
        SuperMap.zero(SuperSpace.from_dims(2, 0), SuperSpace.from_dims(2, 0), p)
        for p in V.algebra.space.parities), "k+k")
    assert epsilon_sector(mixed) == "T"
    with pytest.raises(SectorError):
        epsilon_sector(direct_sum_rep(V, parity_shift(V)))


def direct_sum_rep(A, B):
    labels = [("a", l) for l in A.space.labels] + [("b", l) for l in B.space.labels]
    pars = list(A.space.parities) + list(B.space.parities)
    order = sorted(range(len(labels)), key=lambda k: pars[k])
    pos = {old: new for new, old in enumerate(order)}
    space = SuperSpace(tuple(labels[k] for k in order), tuple(pars[k] for k in order))
    action = []
    for fa, fb in zip(A.action, B.action):
        cols = [dict() for _ in labels]
        for j, col in enumerate(fa.cols):
            cols[pos[j]] = {pos[i]: x for i, x in col.items()}
        off = A.dim
        for j, col in enumerate(fb.cols):
            cols[pos[off + j]] = {pos[off + i]: x for i, x in col.items()}
        action.append(SuperMap(space, space, tuple(cols), fa.parity))
    return Representation(A.algebra, space, tuple(action), "sum")


def test_rep_json_round_trip():
    V = standard_rep_spo(1)
    W = rep_from_json(rep_to_json(V))
    assert W.space.parities == V.space.parities
    assert [f.cols for f in W.action] == [f.cols for f in V.action]


@settings(max_examples=10, deadline=None)
@given(st.lists(st.sampled_from(["V", "PiV", "k"]), min_size=1, max_size=2))
def test_decompose_of_tensor_products_is_consistent(parts):
    g = spo(1)
    mods = {"V": standard_rep_spo(1, g), "PiV": parity_shift(standard_rep_spo(1, g)), "k": trivial_rep(g)}
    R = mods[parts[0]]
    for p in parts[1:]:
        R = tensor(R, mods[p])
    rep = decompose(R)
    assert tuple(map(sum, zip(*[(c.multiplicity * c.dims[0], c.multiplicity * c.dims[1])
                                 for c in rep.constituents]))) == R.dims
    assert sum(c.multiplicity * c.sdim for c in rep.constituents) == superdim(R)
    for c in rep.constituents:
        assert c.sdim != 0
        assert check_rep(c.rep) == []
        flipped = decompose(parity_shift(c.rep)).constituents
        assert len(flipped) == 1 and flipped[0].sector != c.sector


def test_subrepresentation_of_invariant_line():
    g = spo(1)
    I = induce(g)
    inv = invariants(I).basis
    S = subrepresentation(I, inv, "line")
    assert S.dims == (1, 0) and check_rep(S) == []

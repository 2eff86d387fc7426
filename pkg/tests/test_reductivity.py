import pytest

from superrep.liesuper import abelian, build_gl_super, build_spo, direct_sum, sl2_adjoint_q0
from superrep.reductivity import corpus, cross_check, test_direct as direct, test_structural as structural

CORPUS = corpus()


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 10
    assert {expected for _, _, expected in CORPUS} == {True, False}


@pytest.mark.parametrize("name,g,expected", CORPUS, ids=[c[0] for c in CORPUS])
def test_both_tests_agree_with_expectation(name, g, expected):
    d, s = direct(g), structural(g)
    assert d.verdict is expected
    assert s.verdict is expected
    assert cross_check(g)


def test_spo_direct_witness():
    v = direct(build_spo(2).algebra)
    assert v.even_part_reductive and v.b_prime_holds
    # the unique invariant has a nonzero constant term
    assert v.witnesses["adjunction_images"] != ["0"]


def test_counterexample_witnesses():
    g = sl2_adjoint_q0()
    d, s = direct(g), structural(g)
    assert d.even_part_reductive and not d.b_prime_holds
    assert all(x == "0" for x in d.witnesses["adjunction_images"])
    assert s.witnesses["counterexample_factor"]["degenerate"]


def test_gl11_fails_b_prime():
    d = direct(build_gl_super(1, 1).algebra)
    assert d.even_part_reductive and not d.verdict


def test_structural_factors_for_sum():
    s = structural(direct_sum(build_spo(1).algebra, build_spo(2).algebra, abelian(1)))
    assert sorted(str(x) for x in s.structural_factors) == ["BC_1", "BC_2", "Torus(1)"]
    assert s.verdict


def test_verdict_json_shape():
    data = structural(build_spo(1).algebra).to_json()
    assert set(data) == {"method", "even_part_reductive", "b_prime_holds", "structural_factors",
                         "verdict", "witnesses"}
    assert data["structural_factors"] == ["BC_1"]

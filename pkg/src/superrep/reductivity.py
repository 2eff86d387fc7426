"""Two independent decisions of whether Rep(g) is semisimple.

``test_direct`` works with the induced module I(k) = Λ(g_-): the category
is semisimple iff g_+ is reductive and some g-invariant of I(k) has a
nonzero component in Λ⁰.  ``test_structural`` splits g into ideals and
accepts only tori, classical simple algebras and the spo(1,2r) factors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .liesuper import (
    ClassLabel, Ideal, LieSuperalgebra, abelian, affine2, build_gl_super, build_sl, build_sp,
    build_spo, classify_factor, direct_sum, even_part, is_reductive_even, odd_isotypic_split,
    sl2_adjoint_q0,
)
from .repcat import induce, invariants
from .superlinalg import Parity, Vec, format_rational


@dataclass(frozen=True)
class ReductivityVerdict:
    """Outcome of one reductivity test.

    For the structural test ``b_prime_holds`` records whether every factor
    was matched, which is the structural counterpart of the invariant
    condition; in both tests ``verdict`` is the conjunction of the two flags.
    """

    method: str
    even_part_reductive: bool
    b_prime_holds: bool
    structural_factors: Tuple[ClassLabel, ...]
    verdict: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "even_part_reductive": self.even_part_reductive,
            "b_prime_holds": self.b_prime_holds,
            "structural_factors": [str(x) for x in self.structural_factors],
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


def _monomial_name(g: LieSuperalgebra, S) -> str:
    odd = g.odd_indices
    if not S:
        return "1"
    return "^".join(str(g.space.labels[odd[t]]) for t in S)


def _vec_json(g: LieSuperalgebra, labels, v: Vec) -> dict:
    return {_monomial_name(g, labels[k][0]): format_rational(x) for k, x in sorted(v.items())}


def test_direct(g: LieSuperalgebra) -> ReductivityVerdict:
    """Two conditions: g_+ reductive, and p: I(k)^g → k onto."""
    even_ok = is_reductive_even(even_part(g))
    I = induce(g)
    inv = invariants(I).basis
    unit = I.space.index(((), 0))
    images = [v.get(unit, 0) for v in inv]
    b_ok = any(images)
    witnesses = {
        "invariants": [_vec_json(g, I.space.labels, v) for v in inv],
        "adjunction_images": [format_rational(x) for x in images],
    }
    return ReductivityVerdict("direct", even_ok, b_ok, (), even_ok and b_ok, witnesses)


def _center_acts_trivially(g: LieSuperalgebra, ideals: List[Ideal], labels: List[ClassLabel]) -> bool:
    odd = g.odd_indices
    for ideal, lab in zip(ideals, labels):
        if lab.kind != "Torus":
            continue
        for z in ideal.basis:
            if any(g.bracket(z, {j: 1}) for j in odd):
                return False
    return True


def test_structural(g: LieSuperalgebra) -> ReductivityVerdict:
    """Split g by the odd-isotypic recursion and match every factor."""
    even_ok = is_reductive_even(even_part(g))
    ideals = odd_isotypic_split(g)
    labels = [classify_factor(i) for i in ideals]
    total = sum(i.algebra.dim for i in ideals)
    witnesses: dict = {"factors": [{"label": str(l), "dims": list(i.algebra.dims),
                                    "degenerate": i.degenerate, "reason": i.reason}
                                   for i, l in zip(ideals, labels)]}
    matched = all(l.kind != "Unknown" for l in labels) and total == g.dim
    if matched and not _center_acts_trivially(g, ideals, labels):
        matched = False
        witnesses["central_action"] = "a central torus acts nontrivially on g_-"
    bad = next((k for k, l in enumerate(labels) if l.kind == "Unknown"), None)
    if bad is not None:
        witnesses["counterexample_factor"] = witnesses["factors"][bad]
    return ReductivityVerdict("structural", even_ok, matched, tuple(labels), even_ok and matched, witnesses)


def cross_check(g: LieSuperalgebra) -> bool:
    return test_direct(g).verdict == test_structural(g).verdict


def corpus() -> List[Tuple[str, LieSuperalgebra, bool]]:
    """Named test algebras with their expected reductivity."""
    spo1, spo2, spo3 = (build_spo(r).algebra for r in (1, 2, 3))
    return [
        ("spo(1,2)", spo1, True),
        ("spo(1,4)", spo2, True),
        ("spo(1,6)", spo3, True),
        ("sp(4)", build_sp(2), True),
        ("sl(3)", build_sl(3), True),
        ("k^2", abelian(2), True),
        ("sl(2)+adj[Q=0]", sl2_adjoint_q0(), False),
        ("gl(1|1)", build_gl_super(1, 1).algebra, False),
        ("gl(1|2)", build_gl_super(1, 2).algebra, False),
        ("aff(1)", affine2(), False),
        ("spo(1,2)+sp(4)", direct_sum(spo1, build_sp(2)), True),
        ("spo(1,2)+spo(1,4)", direct_sum(spo1, spo2), True),
        ("spo(1,2)+k", direct_sum(spo1, abelian(1)), True),
        ("sl(2)+k", direct_sum(build_sl(2), abelian(1)), True),
        ("spo(1,2)+gl(1|1)", direct_sum(spo1, build_gl_super(1, 1).algebra), False),
    ]

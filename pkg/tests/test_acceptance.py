"""Acceptance suite: one test per criterion, each timed against its budget.

Every test prints its own PASS/FAIL line and also records it for the
summary section printed at the end of the pytest run.
"""
import time
from math import comb

from superrep.hopfmodel import builtin_model, euler_split
from superrep.liesuper import build_gl_super, build_spo, check_axioms, even_part
from superrep.reductivity import corpus, test_direct as direct, test_structural as structural
from superrep.repcat import (
    b_injective, decompose, epsilon_sector, even_invariants, filtration_sym, frobenius_dims,
    induce, parity_shift, self_duality_type, standard_rep_spo, superdim, sym_power_rep, tensor,
    trivial_rep,
)


def report(record, number, passed, seconds, note=""):
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'} ({seconds:.2f} s) {note}")
    record(number, passed, seconds, note)
    return passed


def test_criterion_01_axioms(record):
    t = time.perf_counter()
    algebras = [build_spo(r).algebra for r in range(1, 5)]
    algebras += [build_gl_super(p, q).algebra for p in range(5) for q in range(5) if 1 <= p + q <= 4]
    algebras += [g for name, g, _ in corpus() if "+" in name]
    bad = [g.name for g in algebras if check_axioms(g)]
    dt = time.perf_counter() - t
    ok = not bad and dt < 10
    assert report(record, 1, ok, dt, f"{len(algebras)} algebras, budget 10 s"), bad


def test_criterion_02_qvv(record):
    t = time.perf_counter()
    bad = {r: build_spo(r).cubic_violations() for r in range(1, 5)}
    dt = time.perf_counter() - t
    ok = not any(bad.values())
    assert report(record, 2, ok, dt, "polarized over all odd basis triples, r <= 4"), bad


def test_criterion_03_invariants(record):
    t = time.perf_counter()
    found = {}
    for r in (1, 2, 3):
        g = build_spo(r).algebra
        I = induce(g)
        inv = even_invariants(I).dim
        frob = frobenius_dims(g, trivial_rep(even_part(g)), I)
        found[r] = (inv, frob)
    dt = time.perf_counter() - t
    ok = all(inv == r + 1 and frob == (r + 1, r + 1) for r, (inv, frob) in found.items()) and dt < 60
    assert report(record, 3, ok, dt, f"(invariants, frobenius) = {found}, budget 60 s"), found


def test_criterion_04_decomposition(record):
    t = time.perf_counter()
    ok = True
    for r in (1, 2, 3):
        rep = decompose(induce(build_spo(r).algebra))
        cons = rep.constituents
        labels = [c.label for c in cons]
        ok &= len(cons) == r + 1 and len(set(labels)) == r + 1
        ok &= all(c.multiplicity == 1 for c in cons)
        ok &= any(c.dims == (1, 0) and c.label == "V_0" for c in cons)
        ok &= sum(c.dim for c in cons) == 4 ** r
        # pairwise non-isomorphic: distinct highest weights
        ok &= len({(c.highest_weight, c.hw_parity) for c in cons}) == r + 1
    dt = time.perf_counter() - t
    assert report(record, 4, ok, dt, "r = 1, 2, 3")


def test_criterion_05_sym_powers(record):
    t = time.perf_counter()
    ok = True
    for r in (1, 2):
        V = standard_rep_spo(r)
        target = sorted(decompose(induce(V.algebra)).signature())
        for n in (2 * r + 1, 2 * r):
            ok &= sorted(decompose(sym_power_rep(V, n)).signature()) == target
    dt = time.perf_counter() - t
    ok = ok and dt < 300
    assert report(record, 5, ok, dt, "Sym^{2r+1}, Sym^{2r} vs I(k), r = 1, 2, budget 300 s")


def test_criterion_06_filtration(record):
    t = time.perf_counter()
    ok = True
    notes = []
    for r in (1, 2):
        V = standard_rep_spo(r)
        ok &= all(b_injective(V, n) for n in range(2 * r))
        steps = filtration_sym(V, r)
        ok &= len(steps) == r + 1
        ok &= all(s.simple and s.odd_matches_wedge for s in steps)
        ok &= len({s.label for s in steps}) == r + 1
        notes.append(f"r={r}: " + ",".join(s.label for s in steps))
    dt = time.perf_counter() - t
    assert report(record, 6, ok, dt, "; ".join(notes))


def test_criterion_07_duality(record):
    t = time.perf_counter()
    ok = True
    for r in (1, 2, 3):
        V = standard_rep_spo(r)
        ok &= self_duality_type(V) == "orthogonal"
        ok &= self_duality_type(parity_shift(V)) == "symplectic"
        for c in decompose(induce(V.algebra)).constituents:
            ok &= self_duality_type(c.rep) == "orthogonal"
            ok &= self_duality_type(parity_shift(c.rep)) == "symplectic"
    dt = time.perf_counter() - t
    assert report(record, 7, ok, dt, "V, V_i orthogonal; parity shifts symplectic; r <= 3")


def test_criterion_08_superdimension(record):
    t = time.perf_counter()
    ok = True
    seen = 0
    for r in (1, 2, 3):
        V = standard_rep_spo(r)
        ok &= superdim(V) == 1 - 2 * r
        modules = [induce(V.algebra), V, parity_shift(V)]
        if r <= 2:
            modules += [tensor(V, V), sym_power_rep(V, 2 * r), sym_power_rep(V, 2 * r + 1)]
        for M in modules:
            for c in decompose(M).constituents:
                seen += 1
                ok &= c.sdim != 0 and superdim(c.rep) == c.sdim
    dt = time.perf_counter() - t
    assert report(record, 8, ok, dt, f"{seen} constituents checked")


def test_criterion_09_cross_check(record):
    t = time.perf_counter()
    rows = corpus()
    disagreements = []
    for name, g, expected in rows:
        d, s = direct(g).verdict, structural(g).verdict
        if not (d == s == expected):
            disagreements.append((name, d, s, expected))
    dt = time.perf_counter() - t
    ok = not disagreements and len(rows) >= 10
    assert report(record, 9, ok, dt, f"{len(rows)} algebras"), disagreements


def test_criterion_10_hopf(record):
    t0 = time.perf_counter()
    ok = True
    slowest = 0.0
    models = [(gam, s) for gam in ("trivial", "z2", "z3", "s3") for s in (1, 2, 3)]
    for gam, s in models:
        t = time.perf_counter()
        A = builtin_model(gam, s)
        assert A.order <= 6
        R = euler_split(A)
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        ok &= R.ranks == [comb(s, n) for n in range(s + 1)]
        ok &= R.invariant_dim == 2 ** s == sum(R.ranks)
        ok &= R.kappa_counit == 1
        ok &= R.product_iso and R.product_tensor_match
        ok &= R.lie_checks["left/right supercommute"]
        ok &= R.ok and dt < 30
    total = time.perf_counter() - t0
    assert report(record, 10, ok, total, f"{len(models)} models, slowest {slowest:.2f} s, budget 30 s each")


def test_criterion_11_sectors(record):
    t = time.perf_counter()
    ok = True
    seen = 0
    for r in (1, 2):
        V = standard_rep_spo(r)
        modules = [induce(V.algebra), V, parity_shift(V), tensor(V, V), tensor(V, parity_shift(V)),
                   sym_power_rep(V, 2 * r)]
        for M in modules:
            for c in decompose(M).constituents:
                seen += 1
                sector = epsilon_sector(c.rep)
                ok &= sector in ("T", "Pi_T") and sector == c.sector
                ok &= epsilon_sector(parity_shift(c.rep)) == ({"T": "Pi_T", "Pi_T": "T"}[sector])
    dt = time.perf_counter() - t
    assert report(record, 11, ok, dt, f"{seen} simples, each in exactly one sector")

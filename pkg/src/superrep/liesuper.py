"""Lie superalgebras given by structure constants.

Constructors cover spo(1,2r), gl(p|q), the classical matrix algebras and
the small counterexamples used when testing reductivity.  The structural
queries (center, derived algebra, Killing form, ideal splitting and factor
classification) work on any exact-rational input.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .superlinalg import (
    Echelon, Embedded, Parity, Scalar, SuperMap, SuperSpace, Vec, format_rational,
    homogeneous_basis, intersect, normalize, nullspace, parse_rational, rank, sign,
    span_basis, vadd_inplace, vsum,
)

Matrix = Dict[Tuple[int, int], Scalar]


class SplitError(RuntimeError):
    """An irreducible piece could not be split off over the rationals."""


@dataclass(frozen=True)
class LieSuperalgebra:
    """Basis with parities plus the full bracket table ``(i, j) -> [e_i, e_j]``.

    ``cartan`` optionally lists commuting even elements whose adjoint action
    is diagonalizable over Q (a split Cartan subalgebra).
    """

    space: SuperSpace
    table: Dict[Tuple[int, int], Vec] = field(hash=False)
    cartan: Tuple[Vec, ...] = ()
    name: str = ""

    @classmethod
    def from_upper(cls, space, upper: Dict[Tuple[int, int], Vec], cartan=(), name=""):
        """Fill ``(j, i)`` from ``(i, j)`` by super-antisymmetry when absent."""
        table: Dict[Tuple[int, int], Vec] = {}
        pars = space.parities
        for (i, j), v in upper.items():
            v = {k: normalize(x) for k, x in v.items() if x}
            if not v:
                continue
            table[(i, j)] = v
        for (i, j), v in list(table.items()):
            if (j, i) not in upper:
                s = -sign(pars[i] * pars[j])
                table[(j, i)] = {k: normalize(s * x) for k, x in v.items()}
        return cls(space, table, tuple(cartan), name)

    # -- basic access -------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def dims(self) -> Tuple[int, int]:
        return self.space.dims

    @property
    def even_dim(self) -> int:
        return self.space.even_dim

    @property
    def odd_dim(self) -> int:
        return self.space.odd_dim

    @property
    def even_indices(self) -> List[int]:
        return [i for i, p in enumerate(self.space.parities) if p is Parity.EVEN]

    @property
    def odd_indices(self) -> List[int]:
        return [i for i, p in enumerate(self.space.parities) if p is Parity.ODD]

    def parity(self, i: int) -> Parity:
        return self.space.parities[i]

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self.table.get((i, j), {})

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.table.get((i, j))
                if w:
                    vadd_inplace(out, w, a * b)
        return {k: normalize(x) for k, x in out.items()}

    def ad(self, x: Vec) -> SuperMap:
        par = self.space.vector_parity(x) or Parity.EVEN
        cols = tuple(self.bracket(x, {j: 1}) for j in range(self.dim))
        return SuperMap(self.space, self.space, cols, par)

    def is_abelian(self) -> bool:
        return not any(self.table.values())

    def __repr__(self):
        e, o = self.dims
        return f"LieSuperalgebra({self.name or 'g'}, {e}|{o})"


# ---------------------------------------------------------------------------
# axioms

@dataclass(frozen=True)
class Violation:
    kind: str
    indices: Tuple[int, ...]
    detail: str = ""


def check_axioms(g: LieSuperalgebra) -> List[Violation]:
    """Every failing instance of grading, super-antisymmetry or super Jacobi.

    Jacobi is checked in the form
    ``[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]`` over all basis triples.
    """
    pars = g.space.parities
    n = g.dim
    out: List[Violation] = []
    for (i, j), v in g.table.items():
        want = pars[i] + pars[j]
        if any(pars[k] != want for k in v):
            out.append(Violation("parity", (i, j), "bracket leaves the graded piece"))
    for i in range(n):
        for j in range(i, n):
            a = g.bracket_basis(i, j)
            b = g.bracket_basis(j, i)
            s = sign(pars[i] * pars[j])
            if vsum([(1, a), (s, b)]):
                out.append(Violation("antisymmetry", (i, j)))

    def left(i: int, v: Vec) -> Vec:
        out_: Vec = {}
        for m, c in v.items():
            w = g.table.get((i, m))
            if w:
                vadd_inplace(out_, w, c)
        return out_

    def right(v: Vec, k: int) -> Vec:
        out_: Vec = {}
        for m, c in v.items():
            w = g.table.get((m, k))
            if w:
                vadd_inplace(out_, w, c)
        return out_

    for i in range(n):
        for j in range(n):
            xy = g.bracket_basis(i, j)
            s = sign(pars[i] * pars[j])
            for k in range(n):
                lhs = left(i, g.bracket_basis(j, k))
                rhs = right(xy, k)
                vadd_inplace(rhs, left(j, g.bracket_basis(i, k)), s)
                vadd_inplace(lhs, rhs, -1)
                if lhs:
                    out.append(Violation("jacobi", (i, j, k)))
    return out


@dataclass(frozen=True)
class SupergroupTriple:
    """``(g_+, g_-, Q)`` at the Lie level; ``Q(v) = [v, v]``."""

    algebra: LieSuperalgebra

    def q(self, v: Vec) -> Vec:
        return self.algebra.bracket(v, v)

    def q_polar(self, v: Vec, w: Vec) -> Vec:
        """Symmetric bilinear map with ``q_polar(v, v) = Q(v)``."""
        return self.algebra.bracket(v, w)

    def cubic_violations(self) -> List[Tuple[int, int, int]]:
        """Basis triples where the full polarization of ``[Q(v), v] = 0`` fails."""
        g = self.algebra
        odd = g.odd_indices
        bad = []
        for a, b, c in itertools.combinations_with_replacement(odd, 3):
            total = vsum([
                (1, g.bracket(g.bracket_basis(a, b), {c: 1})),
                (1, g.bracket(g.bracket_basis(b, c), {a: 1})),
                (1, g.bracket(g.bracket_basis(c, a), {b: 1})),
            ])
            if total:
                bad.append((a, b, c))
        return bad

    def qvv(self, v: Vec) -> Vec:
        """``ad_-(Q(v)) v`` for an odd vector ``v``."""
        return self.algebra.bracket(self.q(v), v)


# ---------------------------------------------------------------------------
# matrix helpers

def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    out: Matrix = {}
    by_row: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (k, j), y in b.items():
        by_row.setdefault(k, []).append((j, y))
    for (i, k), x in a.items():
        for j, y in by_row.get(k, ()):
            z = out.get((i, j), 0) + x * y
            if z:
                out[(i, j)] = z
            else:
                out.pop((i, j), None)
    return out


def mat_add(a: Matrix, b: Matrix, c: Scalar = 1) -> Matrix:
    out = dict(a)
    for k, y in b.items():
        z = out.get(k, 0) + c * y
        if z:
            out[k] = normalize(z)
        else:
            out.pop(k, None)
    return out


def _flat(m: Matrix, n: int) -> Vec:
    return {i * n + j: x for (i, j), x in m.items() if x}


def matrix_superalgebra(items: Sequence[Tuple[str, Matrix]], size: int, even_rows: int,
                        cartan_labels: Sequence[str] = (), name: str = "") -> LieSuperalgebra:
    """Lie superalgebra spanned by supermatrices (first ``even_rows`` rows even).

    The parity of each matrix is read off its block; the bracket is the
    supercommutator, expressed back in the given basis.
    """
    def mpar(m: Matrix) -> Parity:
        ps = {Parity(int(i >= even_rows) ^ int(j >= even_rows)) for (i, j) in m}
        if len(ps) != 1:
            raise ValueError("basis matrix is not homogeneous")
        return ps.pop()

    tagged = [(lab, mpar(m), m) for lab, m in items]
    tagged.sort(key=lambda t: t[1])
    space = SuperSpace(tuple(t[0] for t in tagged), tuple(t[1] for t in tagged))
    ech = Echelon()
    for _, _, m in tagged:
        if not ech.add(_flat(m, size)):
            raise ValueError("basis matrices are dependent")
    upper: Dict[Tuple[int, int], Vec] = {}
    for i, (_, pi, a) in enumerate(tagged):
        for j, (_, pj, b) in enumerate(tagged):
            c = mat_add(mat_mul(a, b), mat_mul(b, a), -sign(pi * pj))
            if c:
                upper[(i, j)] = ech.coords(_flat(c, size))
    cartan = tuple({space.index(lab): 1} for lab in cartan_labels)
    return LieSuperalgebra.from_upper(space, upper, cartan, name)


def standard_j(r: int) -> Matrix:
    """The block form [[0, I_r], [-I_r, 0]]."""
    J: Matrix = {}
    for i in range(r):
        J[(i, i + r)] = 1
        J[(i + r, i)] = -1
    return J


def sp_basis(r: int) -> List[Tuple[str, Matrix]]:
    """Basis of sp(2r, J) = {X : JX symmetric}; Cartan elements first."""
    out: List[Tuple[str, Matrix]] = []
    for i in range(r):
        out.append((f"H{i + 1}", {(i, i): 1, (i + r, i + r): -1}))
    for i in range(r):
        for j in range(r):
            if i != j:
                out.append((f"A{i + 1}{j + 1}", {(i, j): 1, (j + r, i + r): -1}))
    for i in range(r):
        for j in range(i, r):
            m = {(i, j + r): 1}
            m[(j, i + r)] = m.get((j, i + r), 0) + 1
            out.append((f"B{i + 1}{j + 1}", m))
    for i in range(r):
        for j in range(i, r):
            m = {(i + r, j): 1}
            m[(j + r, i)] = m.get((j + r, i), 0) + 1
            out.append((f"C{i + 1}{j + 1}", m))
    return out


# ---------------------------------------------------------------------------
# constructors

def build_sp(r: int) -> LieSuperalgebra:
    """sp(2r) as a purely even algebra."""
    if r < 1:
        raise ValueError("r must be positive")
    basis = sp_basis(r)
    return matrix_superalgebra(basis, 2 * r, 2 * r, [f"H{i + 1}" for i in range(r)], f"sp({2 * r})")


def build_sl(n: int) -> LieSuperalgebra:
    if n < 2:
        raise ValueError("n must be at least 2")
    basis: List[Tuple[str, Matrix]] = []
    for i in range(n - 1):
        basis.append((f"H{i + 1}", {(i, i): 1, (i + 1, i + 1): -1}))
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append((f"E{i + 1}{j + 1}", {(i, j): 1}))
    return matrix_superalgebra(basis, n, n, [f"H{i + 1}" for i in range(n - 1)], f"sl({n})")


def build_so(n: int) -> LieSuperalgebra:
    """so(n) for the split form with Gram matrix [[0,I,0],[I,0,0],[0,0,1]]."""
    if n < 3:
        raise ValueError("n must be at least 3")
    m = n // 2
    basis: List[Tuple[str, Matrix]] = []
    for i in range(m):
        basis.append((f"H{i + 1}", {(i, i): 1, (i + m, i + m): -1}))
    for i in range(m):
        for j in range(m):
            if i != j:
                basis.append((f"A{i + 1}{j + 1}", {(i, j): 1, (j + m, i + m): -1}))
    for i in range(m):
        for j in range(i + 1, m):
            basis.append((f"B{i + 1}{j + 1}", {(i, j + m): 1, (j, i + m): -1}))
            basis.append((f"C{i + 1}{j + 1}", {(i + m, j): 1, (j + m, i): -1}))
    if n % 2:
        z = 2 * m
        for i in range(m):
            basis.append((f"D{i + 1}", {(i, z): 1, (z, i + m): -1}))
            basis.append((f"F{i + 1}", {(i + m, z): 1, (z, i): -1}))
    return matrix_superalgebra(basis, n, n, [f"H{i + 1}" for i in range(m)], f"so({n})")


def build_gl_super(p: int, q: int) -> SupergroupTriple:
    """gl(p|q): g_+ = gl(p) ⊕ gl(q), g_- = Hom(V_+,V_-) ⊕ Hom(V_-,V_+)."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("need p, q >= 0 and p + q >= 1")
    n = p + q
    basis = [(f"E{i + 1}{j + 1}", {(i, j): 1}) for i in range(n) for j in range(n)]
    cartan = [f"E{i + 1}{i + 1}" for i in range(n)]
    return SupergroupTriple(matrix_superalgebra(basis, n, p, cartan, f"gl({p}|{q})"))


def spo_q_matrix(r: int, v: Sequence[Scalar]) -> Matrix:
    """``Q(v)_{ab} = sum_c v_a v_c J_{cb}`` for the standard J."""
    J = standard_j(r)
    out: Matrix = {}
    for a in range(2 * r):
        for b in range(2 * r):
            x = sum((v[a] * v[c] * J.get((c, b), 0) for c in range(2 * r)), 0)
            if x:
                out[(a, b)] = normalize(x)
    return out


def build_spo(r: int) -> SupergroupTriple:
    """spo(1,2r): g_+ = sp(2r, J), g_- = k^{2r}, odd bracket the polarization of Q."""
    if r < 1:
        raise ValueError("r must be positive")
    n = 2 * r
    sp = sp_basis(r)
    labels = [lab for lab, _ in sp] + [f"v{a + 1}" for a in range(n)]
    space = SuperSpace(tuple(labels), (Parity.EVEN,) * len(sp) + (Parity.ODD,) * n)
    m = len(sp)
    ech = Echelon(_flat(mat, n) for _, mat in sp)
    J = standard_j(r)
    upper: Dict[Tuple[int, int], Vec] = {}
    for i, (_, a) in enumerate(sp):
        for j, (_, b) in enumerate(sp):
            c = mat_add(mat_mul(a, b), mat_mul(b, a), -1)
            if c:
                upper[(i, j)] = ech.coords(_flat(c, n))
        for k in range(n):
            col = {m + row: x for (row, cc), x in a.items() if cc == k}
            if col:
                upper[(i, m + k)] = col
    for a_ in range(n):
        for b_ in range(n):
            # polarization (1/2)(e_a e_b' + e_b e_a') J
            pol: Matrix = {}
            for (c, d), x in J.items():
                if c == b_:
                    pol[(a_, d)] = pol.get((a_, d), 0) + Fraction(x, 2)
                if c == a_:
                    pol[(b_, d)] = pol.get((b_, d), 0) + Fraction(x, 2)
            pol = {k: normalize(x) for k, x in pol.items() if x}
            if pol:
                upper[(m + a_, m + b_)] = ech.coords(_flat(pol, n))
    g = LieSuperalgebra.from_upper(space, upper, tuple({i: 1} for i in range(r)), f"spo(1,{n})")
    return SupergroupTriple(g)


def abelian(n: int, odd: int = 0) -> LieSuperalgebra:
    space = SuperSpace.from_dims(n, odd, "t")
    return LieSuperalgebra(space, {}, tuple({i: 1} for i in range(n)), f"k^{n}" if not odd else f"k^{n}|{odd}")


def affine2() -> LieSuperalgebra:
    """The 2-dimensional nonabelian Lie algebra [x, y] = y."""
    space = SuperSpace(("x", "y"), (Parity.EVEN, Parity.EVEN))
    return LieSuperalgebra.from_upper(space, {(0, 1): {1: 1}}, (), "aff(1)")


def sl2_adjoint_q0() -> LieSuperalgebra:
    """g_+ = sl(2), g_- = adjoint module, all odd-odd brackets zero."""
    sl2 = build_sl(2)
    m = sl2.dim
    labels = list(sl2.space.labels) + [f"{lab}'" for lab in sl2.space.labels]
    space = SuperSpace(tuple(labels), (Parity.EVEN,) * m + (Parity.ODD,) * m)
    upper: Dict[Tuple[int, int], Vec] = {}
    for (i, j), v in sl2.table.items():
        upper[(i, j)] = v
        upper[(i, m + j)] = {m + k: x for k, x in v.items()}
    return LieSuperalgebra.from_upper(space, upper, sl2.cartan, "sl(2)+adj[Q=0]")


def direct_sum(*algs: LieSuperalgebra) -> LieSuperalgebra:
    """Direct sum; even basis vectors of all summands precede the odd ones."""
    items = []
    for k, g in enumerate(algs):
        for i in range(g.dim):
            items.append(((k, i), g.parity(i)))
    items.sort(key=lambda t: t[1])
    pos = {key: n for n, (key, _) in enumerate(items)}
    labels = tuple(f"{algs[k].name or 'g' + str(k)}#{k}.{algs[k].space.labels[i]}" for (k, i), _ in items)
    space = SuperSpace(labels, tuple(p for _, p in items))
    table: Dict[Tuple[int, int], Vec] = {}
    cartan: List[Vec] = []
    for k, g in enumerate(algs):
        for (i, j), v in g.table.items():
            table[(pos[(k, i)], pos[(k, j)])] = {pos[(k, m)]: x for m, x in v.items()}
        for h in g.cartan:
            cartan.append({pos[(k, m)]: x for m, x in h.items()})
    name = " + ".join(g.name or "g" for g in algs)
    return LieSuperalgebra(space, table, tuple(cartan), name)


# ---------------------------------------------------------------------------
# structural queries

def _relative_solutions(g: LieSuperalgebra, basis: Sequence[Vec],
                        conditions: Callable[[Vec], Vec], probes: Sequence[Vec]) -> List[Vec]:
    """Vectors ``x = sum a_i basis_i`` with ``conditions`` vanishing on every probe.

    ``conditions(x, probe)`` must be bilinear; solved per parity.
    """
    out: List[Vec] = []
    pars = g.space
    for par in (Parity.EVEN, Parity.ODD):
        idx = [i for i, b in enumerate(basis) if pars.vector_parity(b) is par]
        if not idx:
            continue
        rows: Dict[Tuple[int, int], Vec] = {}
        for pi, p in enumerate(probes):
            for i in idx:
                for k, x in conditions(basis[i], p).items():
                    rows.setdefault((pi, k), {})[i] = x
        for sol in nullspace(rows.values(), idx):
            out.append(vsum((c, basis[i]) for i, c in sol.items()))
    return out


def _std_basis(g: LieSuperalgebra) -> List[Vec]:
    return [{i: 1} for i in range(g.dim)]


def center(g: LieSuperalgebra, within: Optional[Sequence[Vec]] = None) -> List[Vec]:
    """Supercenter: ``{x : [x, y] = 0 for all y}`` (relative to a subalgebra if given)."""
    basis = list(within) if within is not None else _std_basis(g)
    return _relative_solutions(g, basis, g.bracket, basis)


def centralizer(g: LieSuperalgebra, sub: Sequence[Vec], within: Optional[Sequence[Vec]] = None) -> List[Vec]:
    basis = list(within) if within is not None else _std_basis(g)
    return _relative_solutions(g, basis, g.bracket, list(sub))


def derived(g: LieSuperalgebra, within: Optional[Sequence[Vec]] = None) -> List[Vec]:
    """Span of all brackets (of a subalgebra if given), as a homogeneous basis."""
    basis = list(within) if within is not None else _std_basis(g)
    if within is None:
        vecs = list(g.table.values())
    else:
        vecs = [g.bracket(a, b) for a in basis for b in basis]
    return list(homogeneous_basis(g.space, (v for v in vecs if v)))


def span_closure(vectors: Sequence[Vec], operators: Sequence[Callable[[Vec], Vec]]) -> List[Vec]:
    """Smallest subspace containing ``vectors`` and stable under ``operators``."""
    ech = Echelon()
    queue = []
    for v in vectors:
        if v and ech.add(v):
            queue.append(v)
    while queue:
        v = queue.pop()
        for op in operators:
            w = op(v)
            if w and ech.add(w):
                queue.append(w)
    return ech.basis


def ideal_closure(g: LieSuperalgebra, vectors: Sequence[Vec], within: Optional[Sequence[Vec]] = None) -> List[Vec]:
    basis = list(within) if within is not None else _std_basis(g)
    ops = [lambda v, b=b: g.bracket(b, v) for b in basis]
    return list(homogeneous_basis(g.space, span_closure(vectors, ops)))


def killing_form(g: LieSuperalgebra) -> List[List[Scalar]]:
    """Killing form ``tr(ad x ad y)`` of the even part, on the even basis."""
    ev = g.even_indices
    ads = []
    for i in ev:
        ads.append({j: {k: x for k, x in g.bracket_basis(i, j).items() if k in set(ev)} for j in ev})
    out = []
    for a in ads:
        row = []
        for b in ads:
            t = 0
            for j in ev:
                for k, x in b[j].items():
                    t += x * a[k].get(j, 0)
            row.append(normalize(t))
        out.append(row)
    return out


def gram_rank(vectors: Sequence[Vec], form: Callable[[Vec, Vec], Scalar]) -> int:
    rows = [{j: form(u, v) for j, v in enumerate(vectors) if form(u, v)} for u in vectors]
    return rank(rows)


def _killing_value(g: LieSuperalgebra, within: Sequence[Vec]):
    """Killing form of the subalgebra spanned by ``within`` (must be an ideal-free basis)."""
    ech = Echelon(within)

    def ad(x: Vec) -> List[Vec]:
        return [ech.coords(g.bracket(x, b)) for b in within]

    def form(u: Vec, v: Vec) -> Scalar:
        au, av = ad(u), ad(v)
        t = 0
        for j in range(len(within)):
            for k, x in av[j].items():
                t += x * au[k].get(j, 0)
        return normalize(t)

    return form


def is_reductive_even(g_plus: LieSuperalgebra) -> bool:
    """True iff g = center ⊕ [g, g] with [g, g] semisimple (Killing nondegenerate)."""
    if g_plus.space.odd_dim:
        raise ValueError("is_reductive_even expects a purely even algebra")
    basis = _std_basis(g_plus)
    return _even_reductive_within(g_plus, basis)


def _even_reductive_within(g: LieSuperalgebra, basis: Sequence[Vec]) -> bool:
    z = center(g, basis)
    d = derived(g, basis)
    if len(z) + len(d) != len(span_basis(basis)) or intersect(z, d):
        return False
    if not d:
        return True
    form = _killing_value(g, d)
    return gram_rank(d, form) == len(d)


def even_part(g: LieSuperalgebra) -> LieSuperalgebra:
    ev = g.even_indices
    space = SuperSpace(tuple(g.space.labels[i] for i in ev), tuple(Parity.EVEN for _ in ev))
    table = {(i, j): v for (i, j), v in g.table.items() if i in ev and j in ev}
    return LieSuperalgebra(space, table, g.cartan, f"({g.name})_+")


def subalgebra(g: LieSuperalgebra, basis: Sequence[Vec], name: str = "") -> LieSuperalgebra:
    """The subalgebra spanned by homogeneous ``basis`` vectors, in that basis."""
    tagged = []
    for v in basis:
        p = g.space.vector_parity(v)
        if p is None:
            raise ValueError("subalgebra basis must be homogeneous and nonzero")
        tagged.append((v, p))
    tagged.sort(key=lambda t: t[1])
    vecs = [v for v, _ in tagged]
    ech = Echelon()
    for v in vecs:
        if not ech.add(v):
            raise ValueError("subalgebra basis is dependent")
    space = SuperSpace(tuple(range(len(vecs))), tuple(p for _, p in tagged))
    table: Dict[Tuple[int, int], Vec] = {}
    for i, a in enumerate(vecs):
        for j, b in enumerate(vecs):
            c = g.bracket(a, b)
            if c:
                table[(i, j)] = ech.coords(c)
    cart = [ech.coords(h) for h in intersect(list(g.cartan), vecs)] if g.cartan else []
    return LieSuperalgebra(space, table, tuple(cart), name)


# ---------------------------------------------------------------------------
# roots and classification

@dataclass(frozen=True)
class ClassLabel:
    kind: str
    n: Optional[int] = None

    def __str__(self):
        if self.kind in ("E", "F", "G"):
            return f"{self.kind}{self.n}"
        if self.kind in ("Torus", "Unknown"):
            return self.kind if self.n is None else f"{self.kind}({self.n})"
        return f"{self.kind}_{self.n}"

    _RANGES = {"A": 1, "B": 3, "C": 2, "D": 3, "BC": 1}

    def __post_init__(self):
        lo = self._RANGES.get(self.kind)
        if lo is not None and (self.n is None or self.n < lo):
            raise ValueError(f"{self.kind}_{self.n} outside the classical range")


def classical_table(rank_: int) -> List[Tuple[ClassLabel, int]]:
    """Simple types of a given rank with their dimensions."""
    n = rank_
    out = []
    if n >= 1:
        out.append((ClassLabel("A", n), n * (n + 2)))
    if n >= 3:
        out.append((ClassLabel("B", n), n * (2 * n + 1)))
    if n >= 2:
        out.append((ClassLabel("C", n), n * (2 * n + 1)))
    if n >= 4:
        # D_3 = A_3 is reported as A_3
        out.append((ClassLabel("D", n), n * (2 * n - 1)))
    exc = {2: [("G", 2, 14)], 4: [("F", 4, 52)], 6: [("E", 6, 78)], 7: [("E", 7, 133)], 8: [("E", 8, 248)]}
    for kind, k, d in exc.get(n, []):
        out.append((ClassLabel(kind, k), d))
    return out


def _rational_eigenvalues(rows: List[List[Scalar]]) -> List[Fraction]:
    import sympy
    M = sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])
    lam = sympy.Symbol("lam")
    roots = sympy.roots(M.charpoly(lam).as_expr(), lam)
    total = sum(roots.values())
    if total != len(rows) or any(not r.is_rational for r in roots):
        raise SplitError("Cartan element has eigenvalues outside Q")
    return [Fraction(int(r.p), int(r.q)) for r in roots]


def joint_eigenspaces(operators: Sequence[Callable[[Vec], Vec]],
                      basis: Sequence[Vec]) -> Dict[Tuple[Fraction, ...], List[Vec]]:
    """Simultaneous eigenspaces of commuting operators on span(basis).

    Keys are the tuples of eigenvalues.  Operators that are already
    diagonal in the current basis are read off directly; otherwise the
    eigenvalues are found from the characteristic polynomial and must be
    rational (:class:`SplitError` if not).  A non-diagonalizable operator
    also raises :class:`SplitError`.
    """
    spaces: Dict[Tuple[Fraction, ...], List[Vec]] = {(): list(basis)} if basis else {}
    for op in operators:
        new: Dict[Tuple[Fraction, ...], List[Vec]] = {}
        for key, vecs in spaces.items():
            ech = Echelon(vecs)
            cols = [ech.coords(op(v)) for v in vecs]
            if all(set(c) <= {j} for j, c in enumerate(cols)):
                for j, v in enumerate(vecs):
                    new.setdefault(key + (Fraction(cols[j].get(j, 0)),), []).append(v)
                continue
            n = len(vecs)
            dense = [[cols[j].get(i, 0) for j in range(n)] for i in range(n)]
            found = 0
            for lam in sorted(set(_rational_eigenvalues(dense))):
                rows = []
                for i in range(n):
                    row = {j: dense[i][j] - (lam if i == j else 0) for j in range(n)}
                    rows.append({j: x for j, x in row.items() if x})
                sols = nullspace(rows, range(n))
                found += len(sols)
                new[key + (lam,)] = [vsum((c, vecs[j]) for j, c in s.items()) for s in sols]
            if found != n:
                raise SplitError("operator is not diagonalizable")
        spaces = new
    return spaces


def root_spaces(g: LieSuperalgebra, within: Optional[Sequence[Vec]] = None) -> Dict[Tuple[Fraction, ...], List[Vec]]:
    """Joint eigenspaces of ad(cartan) on g (or on an ad(cartan)-stable subspace)."""
    if not g.cartan:
        raise SplitError("no split Cartan subalgebra recorded")
    basis = list(within) if within is not None else _std_basis(g)
    ops = [lambda v, h=h: g.bracket(h, v) for h in g.cartan]
    return joint_eigenspaces(ops, basis)


def _root_length_profile(g: LieSuperalgebra, within: Sequence[Vec]) -> Dict[Fraction, int]:
    """Multiset of squared root lengths (Killing normalisation) of an even algebra."""
    spaces = root_spaces(g, within)
    form = _killing_value(g, within)
    hs = list(g.cartan)
    K = [[form(a, b) for b in hs] for a in hs]
    r = len(hs)
    profile: Dict[Fraction, int] = {}
    for root, vecs in spaces.items():
        if all(x == 0 for x in root):
            continue
        # solve K x = root
        rows = []
        for i in range(r):
            row = {j: K[i][j] for j in range(r) if K[i][j]}
            row[r] = -root[i]
            rows.append({k: v for k, v in row.items() if v})
        sols = [s for s in nullspace(rows, range(r + 1)) if s.get(r)]
        if not sols:
            raise SplitError("Killing form degenerate on the Cartan subalgebra")
        s = sols[0]
        x = [Fraction(s.get(i, 0)) / s[r] for i in range(r)]
        length = sum((x[i] * root[i] for i in range(r)), Fraction(0))
        profile[length] = profile.get(length, 0) + len(vecs)
    return profile


def random_rank(g: LieSuperalgebra, within: Sequence[Vec], seed: int = 0, tries: int = 3) -> int:
    """Minimal centralizer dimension of seeded random elements (= rank when reductive)."""
    rng = random.Random(seed)
    best = None
    for _ in range(tries):
        x = vsum((rng.randint(-97, 97), b) for b in within)
        c = centralizer(g, [x], within)
        best = len(c) if best is None else min(best, len(c))
    return best or 0


def _is_simple_even(g: LieSuperalgebra, within: Sequence[Vec]) -> bool:
    if not within or not _even_reductive_within(g, within) or center(g, within):
        return False
    n = len(within)
    for v in Echelon(within).basis:
        if len(ideal_closure(g, [v], within)) < n:
            return False
    return True


def _classify_even(g: LieSuperalgebra, within: Sequence[Vec]) -> ClassLabel:
    n = len(within)
    if n == 0:
        return ClassLabel("Unknown")
    if all(not g.bracket(a, b) for a in within for b in within):
        return ClassLabel("Torus", n)
    if not _is_simple_even(g, within):
        return ClassLabel("Unknown")
    cart = intersect(list(g.cartan), within) if g.cartan else []
    sub = subalgebra(g, within) if cart else None
    rk = len(cart) if cart else random_rank(g, within)
    cands = [lab for lab, d in classical_table(rk) if d == n]
    if len(cands) <= 1:
        return cands[0] if cands else ClassLabel("Unknown")
    if sub is None or not sub.cartan:
        return ClassLabel("Unknown")
    profile = _root_length_profile(sub, _std_basis(sub))
    lengths = sorted(profile)
    if len(lengths) == 1:
        for lab in cands:
            if lab.kind in ("A", "D", "E"):
                return lab
        return ClassLabel("Unknown")
    long_count = profile[lengths[-1]]
    for lab in cands:
        if lab.kind == "B" and long_count == 2 * lab.n * (lab.n - 1):
            return lab
        if lab.kind == "C" and long_count == 2 * lab.n:
            return lab
    return ClassLabel("Unknown")


def irreducible_submodule(operators: Sequence[Callable[[Vec], Vec]], space: Sequence[Vec]) -> List[Vec]:
    """An irreducible submodule of span(space) under the operators.

    Candidates are closures of single basis vectors; the smallest one is
    refined until every basis vector of it regenerates it.  Irreducibility
    is then certified by a one-dimensional commutant; a larger commutant is
    split along a rational eigenspace of one of its elements, and
    :class:`SplitError` is raised when no rational eigenvalue exists.
    """
    basis = Echelon(space).basis
    if not basis:
        return []
    cands = sorted((span_closure([b], operators) for b in basis), key=len)
    cur = cands[0]
    while True:
        smaller = None
        for v in Echelon(cur).basis:
            c = span_closure([v], operators)
            if len(c) < len(cur):
                smaller = c
                break
        if smaller is None:
            break
        cur = smaller
    comm = commutant(operators, cur)
    if len(comm) == 1:
        return cur
    # split along an eigenspace of a non-scalar commutant element
    n = len(cur)
    for T in comm:
        if all(T[j] == ({j: T[0].get(0, 0)} if T[0].get(0, 0) else {}) for j in range(n)):
            continue
        dense = [[T[j].get(i, 0) for j in range(n)] for i in range(n)]
        try:
            lams = sorted(set(_rational_eigenvalues(dense)))
        except SplitError:
            continue
        lam = lams[0]
        rows = [{j: dense[i][j] - (lam if i == j else 0) for j in range(n) if dense[i][j] - (lam if i == j else 0)}
                for i in range(n)]
        sols = nullspace(rows, range(n))
        if 0 < len(sols) < n:
            piece = [vsum((c, cur[j]) for j, c in s.items()) for s in sols]
            return irreducible_submodule(operators, piece)
    raise SplitError("submodule with commutant of dimension %d does not split over Q" % len(comm))


def commutant(operators: Sequence[Callable[[Vec], Vec]], basis: Sequence[Vec]) -> List[List[Vec]]:
    """Endomorphisms of span(basis) commuting with all operators (as column lists)."""
    ech = Echelon(basis)
    n = len(basis)
    mats = [[ech.coords(op(b)) for b in basis] for op in operators]
    # unknown T[i][j] -> index i*n + j ; equation (A T - T A)[i][j] = 0
    rows = []
    for A in mats:
        eq: Dict[Tuple[int, int], Vec] = {}
        # (A T)_{ij} = sum_k A_{ik} T_{kj}; (T A)_{ij} = sum_k T_{ik} A_{kj}
        for k in range(n):
            for i, a in A[k].items():  # A_{ik}
                for j in range(n):
                    e = eq.setdefault((i, j), {})
                    key = k * n + j
                    e[key] = e.get(key, 0) + a
        for j in range(n):
            for k, a in A[j].items():  # A_{kj}
                for i in range(n):
                    e = eq.setdefault((i, j), {})
                    key = i * n + k
                    e[key] = e.get(key, 0) - a
        rows.extend({k: v for k, v in e.items() if v} for e in eq.values())
    sols = nullspace(rows, range(n * n))
    out = []
    for s in sols:
        cols: List[Vec] = [dict() for _ in range(n)]
        for key, x in s.items():
            i, j = divmod(key, n)
            cols[j][i] = x
        out.append(cols)
    return out


# ---------------------------------------------------------------------------
# the odd-isotypic recursion

@dataclass(frozen=True)
class Ideal:
    """An ideal of g: its own structure constants plus its basis inside g."""

    algebra: LieSuperalgebra
    basis: Tuple[Vec, ...]
    degenerate: bool = False
    reason: str = ""


def _make_ideal(g: LieSuperalgebra, vecs: Sequence[Vec], degenerate=False, reason="", name="") -> Ideal:
    vecs = list(homogeneous_basis(g.space, vecs))
    return Ideal(subalgebra(g, vecs, name), tuple(vecs), degenerate, reason)


def _is_ideal(g: LieSuperalgebra, h: Sequence[Vec], work: Sequence[Vec]) -> bool:
    ech = Echelon(h)
    return all(ech.contains(g.bracket(x, y)) for x in work for y in h)


def _split_even(g: LieSuperalgebra, work: List[Vec]) -> List[Ideal]:
    z = center(g, work)
    d = derived(g, work)
    if len(z) + len(d) != len(work) or intersect(z, d):
        return [_make_ideal(g, work, True, "even part is not center ⊕ derived")]
    out: List[Ideal] = []
    rest = d
    while rest:
        ideals = sorted((ideal_closure(g, [b], rest) for b in Echelon(rest).basis), key=len)
        cur = ideals[0]
        while True:
            smaller = None
            for v in Echelon(cur).basis:
                c = ideal_closure(g, [v], rest)
                if len(c) < len(cur):
                    smaller = c
                    break
            if smaller is None:
                break
            cur = smaller
        comp = centralizer(g, cur, rest)
        if len(comp) + len(cur) != len(rest) or intersect(comp, cur):
            out.append(_make_ideal(g, rest, True, "no complementary ideal"))
            break
        out.append(_make_ideal(g, cur))
        rest = comp
    if z:
        out.append(_make_ideal(g, z, name="center"))
    return out


def odd_isotypic_split(g: LieSuperalgebra) -> List[Ideal]:
    """Split g into ideals following the [s, s] recursion.

    Pick an irreducible g_+-submodule s of g_-, set h_+ = [s, s] and emit
    h = h_+ (if it commutes with g_-) or h = h_+ ⊕ s; continue on the
    centralizer of h.  Once no odd part remains, the even remainder splits
    into simple ideals and the center.  When the recursion cannot proceed
    (``[s, s] = 0``, no complementary ideal) the remaining algebra is
    emitted as one ideal with ``degenerate=True``.
    """
    work = _std_basis(g)
    out: List[Ideal] = []
    while True:
        w_even = [v for v in work if g.space.vector_parity(v) is Parity.EVEN]
        w_odd = [v for v in work if g.space.vector_parity(v) is Parity.ODD]
        if not w_odd:
            if w_even:
                out.extend(_split_even(g, w_even))
            return out
        ops = [lambda v, x=x: g.bracket(x, v) for x in w_even]
        s = irreducible_submodule(ops, w_odd)
        h_plus = span_basis(c for a in s for b in s for c in [g.bracket(a, b)] if c)
        if not h_plus:
            out.append(_make_ideal(g, work, True, "[s,s] = 0 for an irreducible odd submodule s"))
            return out
        acts = any(g.bracket(h, v) for h in h_plus for v in w_odd)
        h = list(h_plus) + (list(s) if acts else [])
        if not _is_ideal(g, h, work):
            out.append(_make_ideal(g, work, True, "h is not an ideal"))
            return out
        comp = centralizer(g, h, work)
        if len(comp) + len(h) != len(work) or intersect(comp, h):
            out.append(_make_ideal(g, work, True, "no complementary ideal"))
            return out
        out.append(_make_ideal(g, h))
        work = list(homogeneous_basis(g.space, comp))


def classify_factor(factor) -> ClassLabel:
    """Label an ideal (or a standalone algebra) by classical or BC type."""
    if isinstance(factor, Ideal):
        if factor.degenerate:
            return ClassLabel("Unknown")
        g = factor.algebra
    else:
        g = factor
    basis = _std_basis(g)
    ev = [b for b in basis if g.space.vector_parity(b) is Parity.EVEN]
    od = [b for b in basis if g.space.vector_parity(b) is Parity.ODD]
    if not od:
        return _classify_even(g, ev)
    n_odd = len(od)
    if n_odd % 2:
        return ClassLabel("Unknown")
    r = n_odd // 2
    if len(ev) != r * (2 * r + 1):
        return ClassLabel("Unknown")
    odd_brackets = span_basis(c for a in od for b in od for c in [g.bracket(a, b)] if c)
    if len(odd_brackets) != len(ev):
        return ClassLabel("Unknown")
    ops = [lambda v, x=x: g.bracket(x, v) for x in ev]
    try:
        s = irreducible_submodule(ops, od)
    except SplitError:
        return ClassLabel("Unknown")
    if len(s) != n_odd:
        return ClassLabel("Unknown")
    even_type = _classify_even(g, ev)
    if even_type != (ClassLabel("A", 1) if r == 1 else ClassLabel("C", r)):
        return ClassLabel("Unknown")
    return ClassLabel("BC", r)


# ---------------------------------------------------------------------------
# JSON

def algebra_to_json(g: LieSuperalgebra) -> dict:
    basis = [{"name": str(lab), "parity": str(p)} for lab, p in zip(g.space.labels, g.space.parities)]
    brackets = []
    for i in range(g.dim):
        for j in range(i, g.dim):
            v = g.bracket_basis(i, j)
            if v:
                brackets.append({"i": i, "j": j,
                                 "coeffs": {str(k): format_rational(x) for k, x in sorted(v.items())}})
    out = {"name": g.name, "basis": basis, "brackets": brackets}
    if g.cartan:
        out["cartan"] = [{str(k): format_rational(x) for k, x in sorted(h.items())} for h in g.cartan]
    return out


def algebra_from_json(data: dict) -> LieSuperalgebra:
    try:
        labels = [b["name"] for b in data["basis"]]
        pars = [Parity.parse(b["parity"]) for b in data["basis"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed basis: {exc}") from exc
    order = sorted(range(len(labels)), key=lambda i: pars[i])
    if order != list(range(len(labels))):
        raise ValueError("basis must list even elements before odd ones")
    space = SuperSpace(tuple(labels), tuple(pars))
    upper: Dict[Tuple[int, int], Vec] = {}
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]), int(entry["j"])
        n = len(labels)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError("bracket index out of range")
        vec = {int(k): parse_rational(x) for k, x in entry["coeffs"].items()}
        upper[(i, j)] = {k: x for k, x in vec.items() if x}
    cartan = tuple({int(k): parse_rational(x) for k, x in h.items()} for h in data.get("cartan", []))
    return LieSuperalgebra.from_upper(space, upper, cartan, data.get("name", ""))

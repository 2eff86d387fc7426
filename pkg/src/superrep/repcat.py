"""Representations of Lie superalgebras.

A representation stores one :class:`SuperMap` per basis element of its
algebra.  Besides the tensor calculus (tensor products, duals, parity
shift, symmetric powers) this module builds induced modules on
``Λ(g_-) ⊗ V``, computes invariants and intertwiners, and decomposes
modules over spo(1,2r) into simples by highest weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .liesuper import (
    LieSuperalgebra, SplitError, algebra_from_json, algebra_to_json, build_spo,
    even_part, joint_eigenspaces, root_spaces, span_closure,
)
from .superlinalg import (
    Echelon, Embedded, Parity, SuperMap, SuperSpace, Vec, format_rational, kernel_of_stack,
    normalize, nullspace, parse_rational, power_product, rank, sign, sym_power, vadd_inplace,
    vsum,
)


class NotSemisimpleError(RuntimeError):
    """The module is not a direct sum of the simples found by highest weights."""


class SectorError(RuntimeError):
    """Weight parities mix the two ε-sectors."""


@dataclass(frozen=True)
class Representation:
    algebra: LieSuperalgebra
    space: SuperSpace
    action: Tuple[SuperMap, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.action) != self.algebra.dim:
            raise ValueError("need one action map per basis element")
        for i, f in enumerate(self.action):
            if f.source != self.space or f.target != self.space:
                raise ValueError("action maps must be endomorphisms of the carrier")
            if f.parity != self.algebra.parity(i):
                raise ValueError(f"action of basis element {i} has the wrong parity")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def dims(self) -> Tuple[int, int]:
        return self.space.dims

    def act(self, x: Vec) -> SuperMap:
        """The action of an arbitrary homogeneous element of the algebra."""
        par = self.algebra.space.vector_parity(x)
        if par is None:
            par = Parity.EVEN
        cols = []
        for j in range(self.dim):
            out: Vec = {}
            for i, c in x.items():
                vadd_inplace(out, self.action[i].cols[j], c)
            cols.append({k: normalize(v) for k, v in out.items()})
        return SuperMap(self.space, self.space, tuple(cols), par)

    def __repr__(self):
        e, o = self.dims
        return f"Representation({self.name or '?'}, {e}|{o})"


def check_rep(R: Representation) -> List[Tuple[int, int]]:
    """Basis pairs where ``ρ([x,y]) = ρ(x)ρ(y) - (-1)^{|x||y|} ρ(y)ρ(x)`` fails."""
    g = R.algebra
    bad = []
    for i in range(g.dim):
        for j in range(i, g.dim):
            a, b = R.action[i], R.action[j]
            s = sign(g.parity(i) * g.parity(j))
            lhs = R.act(g.bracket_basis(i, j)) if g.bracket_basis(i, j) else None
            for col in range(R.dim):
                rhs = vsum([(1, a.apply(b.cols[col])), (-s, b.apply(a.cols[col]))])
                want = lhs.cols[col] if lhs is not None else {}
                if vsum([(1, rhs), (-1, want)]):
                    bad.append((i, j))
                    break
    return bad


def trivial_rep(g: LieSuperalgebra, odd: bool = False) -> Representation:
    space = SuperSpace(("1",), (Parity.ODD if odd else Parity.EVEN,))
    action = tuple(SuperMap.zero(space, space, g.parity(i)) for i in range(g.dim))
    return Representation(g, space, action, "1bar" if odd else "1")


def superdim(R: Representation) -> int:
    return R.space.sdim


# ---------------------------------------------------------------------------
# spo(1,2r) standard module

def standard_rep_spo(r: int, g: Optional[LieSuperalgebra] = None) -> Representation:
    """k^{1|2r}: sp(2r) acts on the odd part, v sends λ to λv and w to ½ v'Jw."""
    g = g or build_spo(r).algebra
    n = 2 * r
    m = g.even_dim
    space = SuperSpace(("e0",) + tuple(f"w{a + 1}" for a in range(n)),
                       (Parity.EVEN,) + (Parity.ODD,) * n)
    # even part: recover the matrix of each sp element from its action on g_-
    action = []
    for i in range(m):
        cols = [{}]
        for b in range(n):
            img = g.bracket_basis(i, m + b)
            cols.append({1 + (k - m): x for k, x in img.items()})
        action.append(SuperMap(space, space, tuple(cols), Parity.EVEN))
    J = {(a, a + r): 1 for a in range(r)}
    J.update({(a + r, a): -1 for a in range(r)})
    for a in range(n):
        cols = [{1 + a: 1}]
        for b in range(n):
            x = J.get((a, b), 0)
            cols.append({0: Fraction(x, 2)} if x else {})
        action.append(SuperMap(space, space, tuple(cols), Parity.ODD))
    return Representation(g, space, tuple(action), f"V(spo(1,{n}))")


# ---------------------------------------------------------------------------
# restriction and induction

def restrict_to_even(W: Representation, g_plus: Optional[LieSuperalgebra] = None) -> Representation:
    g = W.algebra
    g_plus = g_plus or even_part(g)
    return Representation(g_plus, W.space, tuple(W.action[i] for i in g.even_indices), f"Res {W.name}")


class _Straightener:
    """PBW action of g on U(g) ⊗_{U(g_+)} V, memoized per monomial."""

    def __init__(self, g: LieSuperalgebra, V: Representation):
        self.g = g
        self.V = V
        self.m = g.even_dim
        self.odd_cache: Dict[Tuple[int, Tuple[int, ...], int], Dict] = {}
        self.even_cache: Dict[Tuple[int, Tuple[int, ...], int], Dict] = {}

    @staticmethod
    def _acc(out: Dict, w: Dict, c=1):
        for k, x in w.items():
            y = out.get(k, 0) + c * x
            if y:
                out[k] = y
            else:
                out.pop(k, None)

    def apply_odd(self, t: int, w: Dict) -> Dict:
        out: Dict = {}
        for (S, u), c in w.items():
            self._acc(out, self.odd_act(t, S, u), c)
        return out

    def odd_act(self, t: int, S: Tuple[int, ...], u: int) -> Dict:
        key = (t, S, u)
        hit = self.odd_cache.get(key)
        if hit is not None:
            return hit
        g, m = self.g, self.m
        if not S or t < S[0]:
            out = {((t,) + S, u): 1}
        else:
            rest = S[1:]
            out = {}
            if t == S[0]:
                for i, q in g.bracket_basis(m + t, m + t).items():
                    self._acc(out, self.even_act(i, rest, u), Fraction(q, 2))
            else:
                self._acc(out, self.apply_odd(S[0], self.odd_act(t, rest, u)), -1)
                for i, q in g.bracket_basis(m + t, m + S[0]).items():
                    self._acc(out, self.even_act(i, rest, u), q)
        out = {k: normalize(x) for k, x in out.items()}
        self.odd_cache[key] = out
        return out

    def even_act(self, i: int, S: Tuple[int, ...], u: int) -> Dict:
        key = (i, S, u)
        hit = self.even_cache.get(key)
        if hit is not None:
            return hit
        g, m = self.g, self.m
        out: Dict = {}
        for j, s in enumerate(S):
            c = g.bracket_basis(i, m + s)
            if not c:
                continue
            w: Dict = {}
            for k, x in c.items():
                self._acc(w, self.odd_act(k - m, S[j + 1:], u), x)
            for s2 in reversed(S[:j]):
                w = self.apply_odd(s2, w)
            self._acc(out, w)
        for u2, x in self.V.action[i].cols[u].items():
            self._acc(out, {(S, u2): x})
        out = {k: normalize(x) for k, x in out.items()}
        self.even_cache[key] = out
        return out


def induce(g: LieSuperalgebra, V: Optional[Representation] = None) -> Representation:
    """I(V) on Λ(g_-) ⊗ V; basis labels ``(S, u)`` with S an increasing tuple
    of odd positions.  ``V`` must be a representation of ``even_part(g)``
    (the trivial module when omitted)."""
    if V is None:
        V = trivial_rep(even_part(g))
    if V.algebra.dim != g.even_dim:
        raise ValueError("V must be a representation of the even part")
    n = g.odd_dim
    items = []
    for k in range(n + 1):
        from itertools import combinations
        for S in combinations(range(n), k):
            for u in range(V.dim):
                items.append(((S, u), Parity(k % 2) + V.space.parities[u]))
    space = SuperSpace.build(items)
    st = _Straightener(g, V)
    action = []
    for i in range(g.dim):
        cols = []
        for S, u in space.labels:
            img = st.even_act(i, S, u) if i < g.even_dim else st.odd_act(i - g.even_dim, S, u)
            cols.append({space.index(k): x for k, x in img.items()})
        action.append(SuperMap(space, space, tuple(cols), g.parity(i)))
    return Representation(g, space, tuple(action), f"I({V.name})")


def adjunction_map(I: Representation, V: Representation) -> SuperMap:
    """p: I(V) → V, the coefficient of the empty monomial."""
    cols = tuple({u: 1} if S == () else {} for S, u in I.space.labels)
    return SuperMap(I.space, V.space, cols, Parity.EVEN)


# ---------------------------------------------------------------------------
# invariants, intertwiners, forms

def invariants(R: Representation) -> Embedded:
    """Vectors killed by every basis element of the algebra."""
    if not R.action:
        return Embedded(R.space, tuple({i: 1} for i in range(R.dim)))
    return kernel_of_stack(list(R.action), R.space)


def even_invariants(R: Representation) -> Embedded:
    """Vectors killed by the even part only, i.e. Hom_{g_+}(k, Res R)."""
    maps = [R.action[i] for i in R.algebra.even_indices]
    if not maps:
        return Embedded(R.space, tuple({i: 1} for i in range(R.dim)))
    return kernel_of_stack(maps, R.space)


def _diagonal(f: SuperMap) -> Optional[List]:
    out = []
    for j, col in enumerate(f.cols):
        if any(k != j for k in col):
            return None
        out.append(col.get(j, 0))
    return out


def _signatures(reps: Sequence[Representation]):
    """Indices of basis elements acting diagonally on every rep, with eigenvalues."""
    g = reps[0].algebra
    diag_idx, sigs = [], [[() for _ in range(R.dim)] for R in reps]
    for i in range(g.dim):
        ds = [_diagonal(R.action[i]) for R in reps]
        if any(d is None for d in ds):
            continue
        diag_idx.append(i)
        for k, d in enumerate(ds):
            sigs[k] = [s + (d[a],) for a, s in enumerate(sigs[k])]
    return diag_idx, sigs


def _rows_of(f: SuperMap) -> List[Dict[int, object]]:
    rows: List[Dict[int, object]] = [dict() for _ in range(f.target.dim)]
    for j, col in enumerate(f.cols):
        for i, x in col.items():
            rows[i][j] = x
    return rows


def hom_space(R1: Representation, R2: Representation) -> List[SuperMap]:
    """Basis of the even g-linear maps R1 → R2."""
    if R1.algebra.dim != R2.algebra.dim:
        raise ValueError("representations of different algebras")
    diag_idx, (sig1, sig2) = _signatures([R1, R2])
    unknowns = [(b, a) for a in range(R1.dim) for b in range(R2.dim)
                if R1.space.parities[a] == R2.space.parities[b] and sig1[a] == sig2[b]]
    uid = {u: k for k, u in enumerate(unknowns)}
    eqs: Dict[Tuple, Dict[int, object]] = {}
    diag = set(diag_idx)
    for x in range(R1.algebra.dim):
        if x in diag:
            continue
        A1 = _rows_of(R1.action[x])
        A2 = R2.action[x]
        for (bp, a), k in uid.items():
            # (ρ2(x) T)_{b a} gets ρ2(x)_{b bp} T_{bp a}
            for b, val in A2.cols[bp].items():
                e = eqs.setdefault((x, b, a), {})
                e[k] = e.get(k, 0) + val
            # (T ρ1(x))_{b a'} gets T_{b a} ρ1(x)_{a a'}
            for ap, val in A1[a].items():
                e = eqs.setdefault((x, bp, ap), {})
                e[k] = e.get(k, 0) - val
    rows = [{k: v for k, v in e.items() if v} for e in eqs.values()]
    out = []
    for sol in nullspace(rows, range(len(unknowns))):
        cols: List[Vec] = [dict() for _ in range(R1.dim)]
        for k, x in sol.items():
            b, a = unknowns[k]
            cols[a][b] = x
        out.append(SuperMap(R1.space, R2.space, tuple(cols), Parity.EVEN))
    return out


def endomorphisms(R: Representation) -> List[SuperMap]:
    return hom_space(R, R)


def is_simple(R: Representation) -> bool:
    """Commutant test; decisive for modules that are semisimple and split."""
    return R.dim > 0 and len(endomorphisms(R)) == 1


Form = Dict[Tuple[int, int], object]


@dataclass(frozen=True)
class BilinearFormSpace:
    representation: Representation
    supersymmetric: Tuple[Form, ...]
    antisymmetric: Tuple[Form, ...]

    def nondegenerate(self, kind: str) -> bool:
        forms = self.supersymmetric if kind == "supersymmetric" else self.antisymmetric
        n = self.representation.dim
        return any(rank([{b: x for (a2, b), x in f.items() if a2 == a} for a in range(n)]) == n
                   for f in forms)


def super_swap(R: Representation, form: Form) -> Form:
    pars = R.space.parities
    return {(b, a): normalize(sign(pars[a] * pars[b]) * x) for (a, b), x in form.items()}


def invariant_forms(R: Representation) -> BilinearFormSpace:
    """Even invariant forms: ``b(xu, w) + (-1)^{|x||u|} b(u, xw) = 0``."""
    diag_idx, (sig,) = _signatures([R])
    pars = R.space.parities
    zero = tuple(0 for _ in diag_idx)
    unknowns = [(a, b) for a in range(R.dim) for b in range(R.dim)
                if pars[a] == pars[b] and tuple(p + q for p, q in zip(sig[a], sig[b])) == zero]
    uid = {u: k for k, u in enumerate(unknowns)}
    eqs: Dict[Tuple, Dict[int, object]] = {}
    diag = set(diag_idx)
    g = R.algebra
    for x in range(g.dim):
        if x in diag:
            continue
        A = R.action[x]
        rows_x = _rows_of(A)
        px = g.parity(x)
        for (c, d), k in uid.items():
            # b(x e_a, e_d) contains ρ(x)_{c a} B_{c d}
            for a, val in rows_x[c].items():
                e = eqs.setdefault((x, a, d), {})
                e[k] = e.get(k, 0) + val
            # (-1)^{|x||c|} b(e_c, x e_b) contains ρ(x)_{d b} B_{c d}
            s = sign(px * pars[c])
            for b, val in rows_x[d].items():
                e = eqs.setdefault((x, c, b), {})
                e[k] = e.get(k, 0) + s * val
    rows = [{k: v for k, v in e.items() if v} for e in eqs.values()]
    sols = nullspace(rows, range(len(unknowns)))
    forms = [{unknowns[k]: x for k, x in s.items()} for s in sols]
    sym, anti = Echelon(), Echelon()
    keys = {u: k for k, u in enumerate(unknowns)}
    for f in forms:
        t = super_swap(R, f)
        plus = {keys[p]: v for p, v in _fadd(f, t, 1).items()}
        minus = {keys[p]: v for p, v in _fadd(f, t, -1).items()}
        if plus:
            sym.add(plus)
        if minus:
            anti.add(minus)
    to_form = lambda v: {unknowns[k]: x for k, x in v.items()}
    return BilinearFormSpace(R, tuple(to_form(v) for v in sym.basis), tuple(to_form(v) for v in anti.basis))


def _fadd(f: Form, g: Form, c) -> Form:
    out = dict(f)
    for k, x in g.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = normalize(y)
        else:
            out.pop(k, None)
    return out


def self_duality_type(R: Representation) -> str:
    """'orthogonal', 'symplectic' or 'none' for a simple module."""
    if not is_simple(R):
        raise ValueError("self_duality_type needs a simple module")
    forms = invariant_forms(R)
    if forms.nondegenerate("supersymmetric"):
        return "orthogonal"
    if forms.nondegenerate("antisymmetric"):
        return "symplectic"
    return "none"


# ---------------------------------------------------------------------------
# tensor calculus

def tensor(R1: Representation, R2: Representation) -> Representation:
    if R1.algebra is not R2.algebra and R1.algebra.dim != R2.algebra.dim:
        raise ValueError("representations of different algebras")
    from .superlinalg import tensor_space
    space, idx = tensor_space(R1.space, R2.space)
    g = R1.algebra
    action = []
    for x in range(g.dim):
        px = g.parity(x)
        A, B = R1.action[x], R2.action[x]
        cols = []
        for (i, j) in space.labels:
            out: Vec = {}
            for c, v in A.cols[i].items():
                out[idx[(c, j)]] = out.get(idx[(c, j)], 0) + v
            s = sign(px * R1.space.parities[i])
            for d, v in B.cols[j].items():
                out[idx[(i, d)]] = out.get(idx[(i, d)], 0) + s * v
            cols.append({k: normalize(v) for k, v in out.items() if v})
        action.append(SuperMap(space, space, tuple(cols), px))
    return Representation(g, space, tuple(action), f"{R1.name}⊗{R2.name}")


def parity_shift(R: Representation) -> Representation:
    """Π(R) = R ⊗ 1̄: same matrices, parities of the carrier flipped."""
    space = R.space.shift()
    pos = [space.index(lab) for lab in R.space.labels]
    action = []
    for f in R.action:
        cols: List[Vec] = [dict() for _ in range(R.dim)]
        for j, col in enumerate(f.cols):
            cols[pos[j]] = {pos[i]: x for i, x in col.items()}
        action.append(SuperMap(space, space, tuple(cols), f.parity))
    return Representation(R.algebra, space, tuple(action), f"Pi({R.name})")


def dual(R: Representation) -> Representation:
    """R* with (x f)(v) = -(-1)^{|x||f|} f(x v)."""
    pars = R.space.parities
    space = SuperSpace(tuple(("*", lab) for lab in R.space.labels), pars)
    g = R.algebra
    action = []
    for x, f in enumerate(R.action):
        rows = _rows_of(f)
        s_x = g.parity(x)
        cols = tuple({c: normalize(-sign(s_x * pars[a]) * v) for c, v in rows[a].items()}
                     for a in range(R.dim))
        action.append(SuperMap(space, space, cols, f.parity))
    return Representation(g, space, tuple(action), f"{R.name}*")


def sym_power_rep(R: Representation, n: int) -> Representation:
    from .superlinalg import power_operator
    P = sym_power(R.space, n)
    action = tuple(power_operator(f, P) for f in R.action)
    return Representation(R.algebra, P.space, action, f"Sym^{n}({R.name})")


def subrepresentation(R: Representation, basis: Sequence[Vec], name: str = "") -> Representation:
    return subquotient(R, basis, (), name)


def subquotient(R: Representation, big: Sequence[Vec], small: Sequence[Vec], name: str = "") -> Representation:
    """span(big)/span(small) for submodules small ⊆ big (homogeneous bases)."""
    ech = Echelon(small)
    k0 = ech.rank
    if k0 != len(small):
        raise ValueError("small basis is dependent")
    comp = []
    for v in big:
        if ech.add(v):
            comp.append(v)
    tagged = sorted(((v, R.space.vector_parity(v)) for v in comp), key=lambda t: t[1])
    if any(p is None for _, p in tagged):
        raise ValueError("subquotient needs homogeneous vectors")
    ech = Echelon(list(small) + [v for v, _ in tagged])
    space = SuperSpace(tuple(range(len(tagged))), tuple(p for _, p in tagged))
    action = []
    for f in R.action:
        cols = []
        for v, _ in tagged:
            c = ech.coords(f.apply(v))
            cols.append({k - k0: x for k, x in c.items() if k >= k0})
        action.append(SuperMap(space, space, tuple(cols), f.parity))
    return Representation(R.algebra, space, tuple(action), name)


def submodule_closure(R: Representation, vectors: Sequence[Vec]) -> List[Vec]:
    ops = [f.apply for f in R.action]
    return span_closure(vectors, ops)


# ---------------------------------------------------------------------------
# weights and decomposition

Weight = Tuple[object, ...]


def _as_int(x):
    x = normalize(x)
    return x


def weight_spaces(R: Representation) -> Dict[Tuple[Weight, Parity], List[Vec]]:
    """Joint eigenspaces of the Cartan elements, split by parity."""
    g = R.algebra
    if not g.cartan:
        raise SplitError("algebra has no recorded Cartan subalgebra")
    ops = [R.act(h).apply for h in g.cartan]
    out: Dict[Tuple[Weight, Parity], List[Vec]] = {}
    for par in (Parity.EVEN, Parity.ODD):
        basis = [{i: 1} for i in range(R.dim) if R.space.parities[i] is par]
        for w, vecs in joint_eigenspaces(ops, basis).items():
            out[(tuple(_as_int(x) for x in w), par)] = vecs
    return out


def _height(w: Weight) -> Fraction:
    r = len(w)
    return sum((Fraction(x) * (r - i) for i, x in enumerate(w)), Fraction(0))


def positive_root_vectors(g: LieSuperalgebra) -> List[Vec]:
    """Homogeneous root vectors whose root has positive height ``Σ α_i (r-i+1)``."""
    out = []
    for root, vecs in sorted(root_spaces(g).items()):
        if all(x == 0 for x in root):
            continue
        h = _height(root)
        if h == 0:
            raise SplitError("height functional vanishes on a root")
        if h > 0:
            for v in vecs:
                for par in (Parity.EVEN, Parity.ODD):
                    part = {i: x for i, x in v.items() if g.parity(i) is par}
                    if part:
                        out.append(part)
    return out


def weight_label(w: Weight, par: Parity) -> str:
    m = tuple(w)
    r = len(m)
    base = None
    for i in range(r + 1):
        if m == (1,) * i + (0,) * (r - i):
            base = f"V_{i}"
    if base is None:
        base = "L[" + ",".join(format_rational(x) for x in m) + "]"
    total = sum(m)
    if Fraction(total).denominator != 1:
        return base if par is Parity.EVEN else f"Pi({base})"
    return base if int(total) % 2 == int(par) else f"Pi({base})"


@dataclass(frozen=True)
class Constituent:
    label: str
    multiplicity: int
    dims: Tuple[int, int]
    sdim: int
    highest_weight: Weight
    hw_parity: Parity
    sector: str
    duality: str
    rep: Representation = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.dims[0] + self.dims[1]


@dataclass(frozen=True)
class DecompositionReport:
    constituents: Tuple[Constituent, ...]
    dims: Tuple[int, int]

    def signature(self) -> Tuple[Tuple[str, int, Tuple[int, int]], ...]:
        return tuple((c.label, c.multiplicity, c.dims) for c in self.constituents)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "constituents": [
                {"label": c.label, "multiplicity": c.multiplicity, "dims": list(c.dims),
                 "superdim": c.sdim, "highest_weight": [format_rational(x) for x in c.highest_weight],
                 "sector": c.sector, "duality": c.duality}
                for c in self.constituents
            ],
        }

    def to_table(self) -> str:
        head = ("label", "mult", "dims", "sdim", "sector", "duality")
        rows = [head] + [(c.label, str(c.multiplicity), f"{c.dims[0]}|{c.dims[1]}", str(c.sdim),
                          c.sector, c.duality) for c in self.constituents]
        widths = [max(len(r[k]) for r in rows) for k in range(len(head))]
        return "\n".join("  ".join(r[k].ljust(widths[k]) for k in range(len(head))).rstrip() for r in rows)


def epsilon_sector(R: Representation) -> str:
    """'T' if every weight vector has parity ≡ Σ m_i, 'Pi_T' if none does."""
    seen = set()
    for (w, par) in weight_spaces(R):
        total = sum(w)
        if Fraction(total).denominator != 1:
            raise SectorError("non-integral weight")
        seen.add(int(total) % 2 == int(par))
    if seen == {True}:
        return "T"
    if seen == {False}:
        return "Pi_T"
    raise SectorError("weight parities mix the T and Pi(T) sectors")


def decompose(R: Representation) -> DecompositionReport:
    """Split a module over spo(1,2r) (or any algebra with a split Cartan) into
    simples.  Each singular vector, i.e. a weight vector killed by the positive
    root vectors, generates one simple constituent; the multiplicity of a
    highest weight is the dimension of its singular space."""
    g = R.algebra
    positives = [R.act(x) for x in positive_root_vectors(g)]
    found = []
    for (w, par), vecs in sorted(weight_spaces(R).items(), key=lambda t: (t[0][1], t[0][0])):
        rows: Dict[Tuple[int, int], Dict[int, object]] = {}
        for p_idx, f in enumerate(positives):
            for j, v in enumerate(vecs):
                for k, x in f.apply(v).items():
                    rows.setdefault((p_idx, k), {})[j] = x
        sing = nullspace(rows.values(), range(len(vecs)))
        if not sing:
            continue
        hw = vsum((c, vecs[j]) for j, c in sing[0].items())
        sub = submodule_closure(R, [hw])
        S = subrepresentation(R, sub, weight_label(w, par))
        found.append((w, par, len(sing), S))
    total = sum(mult * S.dim for _, _, mult, S in found)
    if total != R.dim:
        raise NotSemisimpleError(f"highest-weight constituents cover {total} of {R.dim} dimensions")
    cons = []
    for w, par, mult, S in found:
        cons.append(Constituent(S.name, mult, S.dims, S.space.sdim, w, par,
                                epsilon_sector(S), self_duality_type(S), S))
    order = {"T": 0, "Pi_T": 1}
    cons.sort(key=lambda c: (c.dim, c.sdim, order[c.sector], c.label))
    return DecompositionReport(tuple(cons), R.dims)


# ---------------------------------------------------------------------------
# Frobenius reciprocity

def frobenius_dims(g: LieSuperalgebra, V: Representation, W: Representation) -> Tuple[int, int]:
    """(dim Hom_g(I(V), W), dim Hom_{g_+}(V, Res W))."""
    I = induce(g, V)
    lhs = len(hom_space(I, W))
    rhs = len(hom_space(V, restrict_to_even(W, V.algebra)))
    return lhs, rhs


def frobenius_dim_check(g: LieSuperalgebra, V: Representation, W: Representation) -> bool:
    lhs, rhs = frobenius_dims(g, V, W)
    return lhs == rhs


# ---------------------------------------------------------------------------
# the filtration of Sym^{2r+1}(V) by powers of the invariant form

@dataclass(frozen=True)
class FiltrationStep:
    index: int
    subquotient: Representation
    label: str
    simple: bool
    odd_matches_wedge: bool
    even_matches_wedge: bool


def invariant_quadric(R: Representation):
    """The invariant element of Sym²(R) and the power space it lives in."""
    S2 = sym_power_rep(R, 2)
    inv = invariants(S2).basis
    if len(inv) != 1:
        raise ValueError(f"expected a unique invariant in Sym^2, found {len(inv)}")
    return inv[0], sym_power(R.space, 2)


def multiply_by_power(R: Representation, b: Vec, n: int, k: int) -> List[Vec]:
    """Images of the monomial basis of Sym^n under multiplication by b^k."""
    P2 = sym_power(R.space, 2)
    cur = sym_power(R.space, n)
    imgs = [{i: 1} for i in range(cur.space.dim)]
    for _ in range(k):
        nxt = sym_power(R.space, cur.degree + 2)
        imgs = [power_product(v, cur, b, P2, nxt) for v in imgs]
        cur = nxt
    return imgs


def b_injective(R: Representation, n: int) -> bool:
    b, _ = invariant_quadric(R)
    imgs = multiply_by_power(R, b, n, 1)
    return rank(imgs) == len(imgs)


def _wedge_character(weights: Sequence[Weight], k: int) -> Dict[Weight, int]:
    from itertools import combinations
    out: Dict[Weight, int] = {}
    if k < 0:
        return out
    for combo in combinations(range(len(weights)), k):
        w = tuple(sum((weights[i][j] for i in combo), 0) for j in range(len(weights[0])))
        out[w] = out.get(w, 0) + 1
    return out


def _character(R: Representation, par: Parity) -> Dict[Weight, int]:
    return {w: len(v) for (w, p), v in weight_spaces(R).items() if p is par and v}


def filtration_sym(R: Representation, r: int, degree: Optional[int] = None) -> List[FiltrationStep]:
    """Subquotients of b^{r-i}·Sym^{d-2(r-i)} ⊂ Sym^d(V) for the standard module,
    with d = 2r+1 by default (d = 2r gives the companion filtration).

    Each step records its highest-weight label, simplicity, and whether the
    odd (even) part has the character of Λ^{d-2(r-i)}(V_-) (resp. one degree
    lower) as a module over the even part.
    """
    d = 2 * r + 1 if degree is None else degree
    b, _ = invariant_quadric(R)
    top = sym_power_rep(R, d)
    odd_w = [w for (w, p), vecs in weight_spaces(R).items() if p is Parity.ODD for _ in vecs]
    steps = []
    prev: List[Vec] = []
    for i in range(r + 1):
        n = d - 2 * (r - i)
        if n < 0:
            continue
        F = [v for v in multiply_by_power(R, b, n, r - i) if v]
        F = list(Echelon(prev + F).basis)
        G = subquotient(top, F, prev)
        rep = decompose(G)
        label = rep.constituents[0].label if len(rep.constituents) == 1 else "+".join(
            c.label for c in rep.constituents)
        simple = len(rep.constituents) == 1 and rep.constituents[0].multiplicity == 1
        odd_deg = n if n % 2 else n - 1
        even_deg = n - 1 if n % 2 else n
        steps.append(FiltrationStep(
            i, G, label, simple,
            _character(G, Parity.ODD) == _wedge_character(odd_w, odd_deg),
            _character(G, Parity.EVEN) == _wedge_character(odd_w, even_deg),
        ))
        prev = F
    return steps


# ---------------------------------------------------------------------------
# JSON

def rep_to_json(R: Representation) -> dict:
    action = []
    for i, f in enumerate(R.action):
        entries = [[row, col, format_rational(x)] for col, c in enumerate(f.cols) for row, x in sorted(c.items())]
        action.append({"element": i, "entries": entries})
    return {
        "algebra": algebra_to_json(R.algebra),
        "space": [{"name": str(lab), "parity": str(p)} for lab, p in zip(R.space.labels, R.space.parities)],
        "action": action,
        "name": R.name,
    }


def rep_from_json(data: dict) -> Representation:
    g = algebra_from_json(data["algebra"])
    space = SuperSpace(tuple(s["name"] for s in data["space"]), tuple(Parity.parse(s["parity"]) for s in data["space"]))
    cols_by_elem = {i: [dict() for _ in range(space.dim)] for i in range(g.dim)}
    for item in data.get("action", []):
        i = int(item["element"])
        if i not in cols_by_elem:
            raise ValueError("action element out of range")
        for row, col, x in item["entries"]:
            v = parse_rational(x)
            if v:
                cols_by_elem[int(i)][int(col)][int(row)] = v
    action = tuple(SuperMap(space, space, tuple(cols_by_elem[i]), g.parity(i)) for i in range(g.dim))
    return Representation(g, space, action, data.get("name", ""))

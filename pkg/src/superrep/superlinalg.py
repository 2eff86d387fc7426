"""Exact parity-graded linear algebra.

Scalars are Python ints or :class:`fractions.Fraction` (never floats).
Vectors are sparse dicts ``{index: scalar}`` without zero entries.
A :class:`SuperMap` stores the image of every source basis vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from math import comb
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Vec = Dict[int, Scalar]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def flip(self) -> "Parity":
        return Parity(1 - int(self))

    @classmethod
    def parse(cls, value) -> "Parity":
        if isinstance(value, Parity):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("even", "+", "0"):
                return cls.EVEN
            if key in ("odd", "-", "1"):
                return cls.ODD
            raise ValueError(f"unknown parity {value!r}")
        return cls(int(value) % 2)

    def __str__(self):
        return "even" if self is Parity.EVEN else "odd"


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# scalars

def normalize(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def parse_rational(text) -> Scalar:
    if isinstance(text, (int, Fraction)):
        return normalize(text)
    if isinstance(text, float):
        raise TypeError("floating point input is not accepted")
    return normalize(Fraction(str(text).strip()))


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# sparse vectors

def vadd(u: Vec, v: Vec, c: Scalar = 1) -> Vec:
    """Return ``u + c*v`` as a new vector."""
    out = dict(u)
    if c == 0:
        return out
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = normalize(y)
        else:
            out.pop(k, None)
    return out


def vadd_inplace(u: Vec, v: Vec, c: Scalar = 1) -> None:
    if c == 0:
        return
    for k, x in v.items():
        y = u.get(k, 0) + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def vscale(v: Vec, c: Scalar) -> Vec:
    if c == 0:
        return {}
    return {k: normalize(c * x) for k, x in v.items()}


def vsum(terms: Iterable[Tuple[Scalar, Vec]]) -> Vec:
    out: Vec = {}
    for c, v in terms:
        vadd_inplace(out, v, c)
    return {k: normalize(x) for k, x in out.items()}


def vdot(u: Vec, v: Vec) -> Scalar:
    if len(u) > len(v):
        u, v = v, u
    return normalize(sum((x * v[k] for k, x in u.items() if k in v), 0))


def unit(i: int) -> Vec:
    return {i: 1}


# ---------------------------------------------------------------------------
# row reduction

class Echelon:
    """Incremental echelon form of a growing list of sparse vectors.

    Each stored row lacks the pivots of all earlier rows, so a vector is
    reduced by a single pass over the rows in insertion order.  Rows also
    remember how they were built from the inserted vectors, which gives
    coordinates with respect to the inserted (independent) vectors.
    """

    def __init__(self, vectors: Iterable[Vec] = ()):
        self.rows: List[Tuple[int, Vec, Vec]] = []
        self.basis: List[Vec] = []
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Tuple[Vec, Vec]:
        res = dict(v)
        combo: Vec = {}
        for pivot, row, rcombo in self.rows:
            c = res.get(pivot)
            if c:
                f = Fraction(c) / row[pivot] if row[pivot] != 1 else c
                vadd_inplace(res, row, -f)
                vadd_inplace(combo, rcombo, f)
        return res, combo

    def add(self, v: Vec) -> bool:
        res, combo = self.reduce(v)
        if not res:
            return False
        idx = len(self.basis)
        self.basis.append(dict(v))
        pivot = min(res)
        # row = v - sum(combo_k * basis_k); record the combination of basis vectors
        rcombo = {k: -x for k, x in combo.items()}
        rcombo[idx] = 1
        self.rows.append((pivot, {k: normalize(x) for k, x in res.items()}, rcombo))
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def coords(self, v: Vec) -> Vec:
        """Coordinates of ``v`` with respect to :attr:`basis`."""
        res, combo = self.reduce(v)
        if res:
            raise ValueError("vector is not in the span")
        return {k: normalize(x) for k, x in combo.items() if x}

    def pivots(self) -> List[int]:
        return [p for p, _, _ in self.rows]


def rref(rows: Iterable[Vec]) -> Dict[int, Vec]:
    """Reduced row echelon form: ``{pivot_column: row}`` with unit pivots."""
    piv: Dict[int, Vec] = {}
    for r in rows:
        v = dict(r)
        for p in [p for p in v if p in piv]:
            c = v.get(p)
            if c:
                vadd_inplace(v, piv[p], -c)
        if not v:
            continue
        p = min(v)
        c = v[p]
        v = {k: normalize(Fraction(x) / c) if c != 1 else x for k, x in v.items()}
        for q, row in piv.items():
            d = row.get(p)
            if d:
                vadd_inplace(row, v, -d)
        piv[p] = v
    for row in piv.values():
        for k in list(row):
            row[k] = normalize(row[k])
    return piv


def nullspace(rows: Iterable[Vec], columns: Iterable[int]) -> List[Vec]:
    """Basis of ``{x : row . x = 0 for every row}`` over the given columns."""
    cols = sorted(set(columns))
    piv = rref(rows)
    pivset = set(piv)
    out = []
    for f in cols:
        if f in pivset:
            continue
        v: Vec = {f: 1}
        for p, row in piv.items():
            c = row.get(f)
            if c:
                v[p] = normalize(-c)
        out.append(v)
    return out


def rank(vectors: Iterable[Vec]) -> int:
    return Echelon(vectors).rank


def span_basis(vectors: Iterable[Vec]) -> List[Vec]:
    """An independent subset spanning the same space (first-come order)."""
    return Echelon(vectors).basis


def intersect(a: Sequence[Vec], b: Sequence[Vec]) -> List[Vec]:
    """Basis of span(a) ∩ span(b)."""
    a = span_basis(a)
    b = span_basis(b)
    if not a or not b:
        return []
    na = len(a)
    # sum_i x_i a_i - sum_j y_j b_j = 0; unknowns indexed 0..na+nb-1
    coords = sorted({k for v in itertools.chain(a, b) for k in v})
    rows = []
    for k in coords:
        row: Vec = {}
        for i, v in enumerate(a):
            if k in v:
                row[i] = v[k]
        for j, v in enumerate(b):
            if k in v:
                row[na + j] = -v[k]
        rows.append(row)
    sols = nullspace(rows, range(na + len(b)))
    out = [vsum((x, a[i]) for i, x in s.items() if i < na) for s in sols]
    return span_basis(v for v in out if v)


# ---------------------------------------------------------------------------
# super vector spaces and maps

@dataclass(frozen=True)
class SuperSpace:
    """A finite-dimensional super vector space with an ordered basis.

    Even basis vectors always precede odd ones.
    """

    labels: Tuple[Hashable, ...]
    parities: Tuple[Parity, ...]
    _index: Dict[Hashable, int] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.labels) != len(self.parities):
            raise ValueError("labels and parities differ in length")
        pars = tuple(Parity.parse(p) for p in self.parities)
        object.__setattr__(self, "parities", pars)
        if any(a > b for a, b in zip(pars, pars[1:])):
            raise ValueError("basis must list even vectors before odd ones")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
        if len(self._index) != len(self.labels):
            raise ValueError("duplicate basis labels")

    @classmethod
    def from_dims(cls, even: int, odd: int, prefix: str = "e") -> "SuperSpace":
        labels = tuple(f"{prefix}{i}" for i in range(even + odd))
        return cls(labels, (Parity.EVEN,) * even + (Parity.ODD,) * odd)

    @classmethod
    def build(cls, items: Iterable[Tuple[Hashable, Parity]]) -> "SuperSpace":
        """Stable sort of ``(label, parity)`` pairs into even-first order."""
        items = sorted(((lab, Parity.parse(p)) for lab, p in items), key=lambda t: t[1])
        return cls(tuple(lab for lab, _ in items), tuple(p for _, p in items))

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def even_dim(self) -> int:
        return sum(1 for p in self.parities if p is Parity.EVEN)

    @property
    def odd_dim(self) -> int:
        return self.dim - self.even_dim

    @property
    def dims(self) -> Tuple[int, int]:
        return self.even_dim, self.odd_dim

    @property
    def sdim(self) -> int:
        return self.even_dim - self.odd_dim

    def index(self, label) -> int:
        return self._index[label]

    def parity(self, i: int) -> Parity:
        return self.parities[i]

    def vector_parity(self, v: Vec) -> Optional[Parity]:
        """Parity of a homogeneous vector, ``None`` for zero or mixed."""
        ps = {self.parities[i] for i in v}
        return ps.pop() if len(ps) == 1 else None

    def shift(self) -> "SuperSpace":
        """Parity shift; the basis is reordered to keep even-first."""
        return SuperSpace.build((lab, p.flip()) for lab, p in zip(self.labels, self.parities))

    def __str__(self):
        return f"k^{{{self.even_dim}|{self.odd_dim}}}"


@dataclass(frozen=True)
class SuperMap:
    """Homogeneous linear map; ``cols[j]`` is the image of source basis vector j."""

    source: SuperSpace
    target: SuperSpace
    cols: Tuple[Vec, ...]
    parity: Parity = Parity.EVEN

    def __post_init__(self):
        if len(self.cols) != self.source.dim:
            raise ValueError("column count does not match source dimension")
        object.__setattr__(self, "parity", Parity.parse(self.parity))
        sp, tp = self.source.parities, self.target.parities
        for j, col in enumerate(self.cols):
            for i in col:
                if not 0 <= i < self.target.dim:
                    raise ValueError("entry outside target")
                if sp[j] + self.parity != tp[i]:
                    raise ValueError(
                        f"nonzero entry ({i},{j}) violates the {self.parity} block structure")

    @classmethod
    def identity(cls, space: SuperSpace) -> "SuperMap":
        return cls(space, space, tuple({i: 1} for i in range(space.dim)))

    @classmethod
    def zero(cls, source: SuperSpace, target: SuperSpace, parity=Parity.EVEN) -> "SuperMap":
        return cls(source, target, tuple({} for _ in range(source.dim)), parity)

    @classmethod
    def from_dense(cls, source, target, rows, parity=None) -> "SuperMap":
        cols = []
        for j in range(source.dim):
            cols.append({i: normalize(parse_rational(rows[i][j]))
                         for i in range(target.dim) if rows[i][j]})
        if parity is None:
            parity = Parity.EVEN
            for j, col in enumerate(cols):
                for i in col:
                    parity = source.parities[j] + target.parities[i]
                    break
                else:
                    continue
                break
        return cls(source, target, tuple(cols), parity)

    def apply(self, v: Vec) -> Vec:
        return vsum((c, self.cols[j]) for j, c in v.items())

    def entry(self, i: int, j: int) -> Scalar:
        return self.cols[j].get(i, 0)

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.source.dim for _ in range(self.target.dim)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def rows(self) -> List[Vec]:
        out: List[Vec] = [dict() for _ in range(self.target.dim)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __add__(self, other: "SuperMap") -> "SuperMap":
        if (self.source, self.target, self.parity) != (other.source, other.target, other.parity):
            raise ValueError("incompatible maps")
        return SuperMap(self.source, self.target,
                        tuple(vadd(a, b) for a, b in zip(self.cols, other.cols)), self.parity)

    def __sub__(self, other: "SuperMap") -> "SuperMap":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "SuperMap":
        return SuperMap(self.source, self.target, tuple(vscale(col, c) for col in self.cols),
                        self.parity)

    def __matmul__(self, other: "SuperMap") -> "SuperMap":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, SuperMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.parity == other.parity and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source, self.target, self.parity))


def compose(f: SuperMap, g: SuperMap) -> SuperMap:
    """``f ∘ g``; parities add."""
    if g.target != f.source:
        raise ValueError(f"cannot compose: {g.target} -> {f.source} mismatch")
    return SuperMap(g.source, f.target, tuple(f.apply(col) for col in g.cols),
                    f.parity + g.parity)


def supercommutator(f: SuperMap, g: SuperMap) -> SuperMap:
    fg = compose(f, g)
    gf = compose(g, f)
    return fg - gf.scale(sign(f.parity * g.parity))


def supertrace(f: SuperMap) -> Scalar:
    if f.source != f.target:
        raise ValueError("supertrace needs an endomorphism")
    if f.parity is not Parity.EVEN:
        raise ValueError("supertrace is defined for even maps")
    pars = f.source.parities
    return normalize(sum((sign(pars[i]) * f.cols[i].get(i, 0) for i in range(f.source.dim)), 0))


@dataclass(frozen=True)
class Embedded:
    """A subspace given by a basis of homogeneous vectors in an ambient space."""

    ambient: SuperSpace
    basis: Tuple[Vec, ...]

    @property
    def space(self) -> SuperSpace:
        labels = []
        for k, v in enumerate(self.basis):
            labels.append((k, self.ambient.vector_parity(v)))
        return SuperSpace(tuple(k for k, _ in labels), tuple(p for _, p in labels))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dims(self) -> Tuple[int, int]:
        return self.space.dims


def homogeneous_basis(ambient: SuperSpace, vectors: Iterable[Vec]) -> Tuple[Vec, ...]:
    """Split vectors into parity components and return an even-first basis."""
    even, odd = Echelon(), Echelon()
    for v in vectors:
        ve = {i: x for i, x in v.items() if ambient.parities[i] is Parity.EVEN}
        vo = {i: x for i, x in v.items() if ambient.parities[i] is Parity.ODD}
        if ve:
            even.add(ve)
        if vo:
            odd.add(vo)
    return tuple(even.basis) + tuple(odd.basis)


def kernel(f: SuperMap) -> Embedded:
    """Null space of a (homogeneous) map; the basis is parity-homogeneous."""
    return kernel_of_stack([f])


def kernel_of_stack(maps: Sequence[SuperMap], source: Optional[SuperSpace] = None) -> Embedded:
    """Common kernel of several maps with a shared source."""
    if source is None:
        source = maps[0].source
    basis: List[Vec] = []
    for par in (Parity.EVEN, Parity.ODD):
        cols = [j for j in range(source.dim) if source.parities[j] is par]
        if not cols:
            continue
        rows: Dict[Tuple[int, int], Vec] = {}
        for m_idx, f in enumerate(maps):
            if f.source != source:
                raise ValueError("maps must share a source")
            for j in cols:
                for i, x in f.cols[j].items():
                    rows.setdefault((m_idx, i), {})[j] = x
        basis.extend(nullspace(rows.values(), cols))
    return Embedded(source, tuple(basis))


# ---------------------------------------------------------------------------
# tensor, symmetric and exterior powers

def tensor_space(V: SuperSpace, W: SuperSpace) -> Tuple[SuperSpace, Dict[Tuple[int, int], int]]:
    """``V ⊗ W`` with basis labels ``(i, j)`` reordered even-first."""
    items = [((i, j), V.parities[i] + W.parities[j]) for i in range(V.dim) for j in range(W.dim)]
    space = SuperSpace.build(items)
    return space, {lab: k for k, lab in enumerate(space.labels)}


@dataclass(frozen=True)
class PowerSpace:
    """Degree-n part of Sym(V) (super convention) or of the exterior algebra.

    ``monomials[k]`` is a sorted tuple of base indices; in ``sym`` mode odd
    indices appear at most once, in ``wedge`` mode every index appears at
    most once.  Elements of degree n have parity = sum of factor parities.
    """

    base: SuperSpace
    degree: int
    kind: str
    space: SuperSpace
    monomials: Tuple[Tuple[int, ...], ...]
    index: Dict[Tuple[int, ...], int] = field(compare=False, hash=False)

    def normal_form(self, factors: Sequence[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
        return normal_form(self.base, factors, self.kind)


def normal_form(base: SuperSpace, factors: Sequence[int], kind: str = "sym"):
    """Sort a product of basis vectors; return ``(sign, monomial)`` or ``(0, None)``."""
    seq = list(factors)
    pars = base.parities
    s = 0
    # insertion sort tracking transposition signs
    for a in range(1, len(seq)):
        b = a
        while b > 0 and seq[b - 1] > seq[b]:
            x, y = seq[b - 1], seq[b]
            s += 1 if kind == "wedge" else pars[x] * pars[y]
            seq[b - 1], seq[b] = y, x
            b -= 1
    for x, y in zip(seq, seq[1:]):
        if x == y and (kind == "wedge" or pars[x] is Parity.ODD):
            return 0, None
    return sign(s), tuple(seq)


def _power(V: SuperSpace, n: int, kind: str) -> PowerSpace:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if kind not in ("sym", "wedge"):
        raise ValueError(kind)
    monos = []
    for combo in itertools.combinations_with_replacement(range(V.dim), n):
        if normal_form(V, combo, kind)[1] is not None:
            monos.append(combo)
    items = [(m, sum(V.parities[i] for i in m) % 2) for m in monos]
    space = SuperSpace.build(items)
    mons = tuple(space.labels)
    return PowerSpace(V, n, kind, space, mons, {m: k for k, m in enumerate(mons)})


def sym_power(V: SuperSpace, n: int) -> PowerSpace:
    """Super-symmetric power: even vectors commute, odd vectors anticommute."""
    return _power(V, n, "sym")


def wedge_power(V: SuperSpace, n: int) -> PowerSpace:
    """Exterior power of the underlying space (all vectors anticommute),
    graded by the total parity of the factors."""
    return _power(V, n, "wedge")


def _monomial_count(nvars: int, degree: int) -> int:
    if nvars == 0:
        return 1 if degree == 0 else 0
    return comb(nvars + degree - 1, degree)


def sym_power_dim(even: int, odd: int, n: int) -> int:
    """Closed-form dimension of Sym^n(k^{even|odd})."""
    return sum(comb(odd, b) * _monomial_count(even, n - b) for b in range(min(n, odd) + 1))


def power_operator(op: SuperMap, P: PowerSpace, Q: Optional[PowerSpace] = None) -> SuperMap:
    """Extend an endomorphism of the base space to a (super)derivation of P."""
    if op.source != P.base or op.target != P.base:
        raise ValueError("operator must act on the base space")
    Q = Q or P
    pars = P.base.parities
    cols = []
    for mono in P.monomials:
        out: Vec = {}
        before = 0
        for k, i in enumerate(mono):
            sgn = sign(op.parity * before)
            for c, x in op.cols[i].items():
                s, m = normal_form(P.base, mono[:k] + (c,) + mono[k + 1:], P.kind)
                if m is not None:
                    vadd_inplace(out, {Q.index[m]: 1}, sgn * s * x)
            before += pars[i]
        cols.append({k: normalize(x) for k, x in out.items()})
    return SuperMap(P.space, Q.space, tuple(cols), op.parity)


def power_product(x: Vec, P1: PowerSpace, y: Vec, P2: PowerSpace, P3: PowerSpace) -> Vec:
    """Product of ``x ∈ P1`` and ``y ∈ P2`` inside ``P3`` (degrees must add)."""
    if P1.degree + P2.degree != P3.degree or P1.base != P2.base or P3.base != P1.base:
        raise ValueError("incompatible power spaces")
    out: Vec = {}
    for a, ca in x.items():
        for b, cb in y.items():
            s, m = normal_form(P1.base, P1.monomials[a] + P2.monomials[b], P3.kind)
            if m is not None:
                vadd_inplace(out, {P3.index[m]: 1}, s * ca * cb)
    return {k: normalize(v) for k, v in out.items()}

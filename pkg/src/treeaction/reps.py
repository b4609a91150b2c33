"""Affine isometric actions as data, with displacement machinery.

A representation object exposes:

    chart        -- tag of the affine space it acts on
    basepoint()  -- a distinguished AffinePt in that chart
    act(g, pt)   -- the affine action
    weight(key)  -- squared norm of a basis key (default 1)

Everything is exact: linear parts are sparse rational column maps, and only
squared norms are ever produced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .abelian import AbelianGroup, DiagonalEmbedding, Element
from .errors import ChartMismatchError, ConstructionError, InvariantFailure
from .linalg import (
    ONE,
    ZERO,
    AffinePt,
    SparseVec,
    gram_schmidt_unnormalized,
    project_onto_span,
)


class LinearMap:
    """Sparse linear map: keys not mentioned in ``cols`` are fixed."""

    __slots__ = ("cols",)

    def __init__(self, cols: Dict):
        self.cols = {
            k: col for k, col in cols.items() if col != SparseVec({k: 1})
        }

    def apply(self, v: SparseVec) -> SparseVec:
        out = ZERO
        for k, c in v.items():
            col = self.cols.get(k)
            if col is None:
                out = out.add(SparseVec({k: c}))
            else:
                out = out.add(col.scale(c))
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        cols = {k: self.apply(col) for k, col in other.cols.items()}
        for k, col in self.cols.items():
            if k not in cols:
                cols[k] = col
        return LinearMap(cols)

    def inverse(self) -> "LinearMap":
        keys = set(self.cols)
        for col in self.cols.values():
            keys |= set(col.keys())
        order = sorted(keys, key=repr)
        idx = {k: i for i, k in enumerate(order)}
        n = len(order)
        # Row-reduce [M | I] over the mentioned keys.
        rows = [[Fraction(0)] * (2 * n) for _ in range(n)]
        for j, k in enumerate(order):
            col = self.cols.get(k, SparseVec({k: 1}))
            for kk, c in col.items():
                rows[idx[kk]][j] = c
            rows[j][n + j] = Fraction(1)
        for col_i in range(n):
            piv = next(
                (r for r in range(col_i, n) if rows[r][col_i]), None
            )
            if piv is None:
                raise ConstructionError("linear map is not invertible")
            rows[col_i], rows[piv] = rows[piv], rows[col_i]
            pv = rows[col_i][col_i]
            rows[col_i] = [x / pv for x in rows[col_i]]
            for r in range(n):
                if r != col_i and rows[r][col_i]:
                    f = rows[r][col_i]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col_i])]
        cols = {}
        for j, k in enumerate(order):
            cols[k] = SparseVec(
                (order[i], rows[i][n + j]) for i in range(n)
            )
        return LinearMap(cols)

    def is_identity(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.cols == other.cols

    def __hash__(self):
        return hash(frozenset(self.cols.items()))


IDENTITY_MAP = LinearMap({})


@dataclass(frozen=True)
class AffineIso:
    """x -> linear(x) + shift."""

    linear: LinearMap = IDENTITY_MAP
    shift: SparseVec = ZERO

    def apply(self, v: SparseVec) -> SparseVec:
        return self.linear.apply(v).add(self.shift)

    def compose(self, other: "AffineIso") -> "AffineIso":
        return AffineIso(
            self.linear.compose(other.linear),
            self.linear.apply(other.shift).add(self.shift),
        )

    def inverse(self) -> "AffineIso":
        inv = self.linear.inverse()
        return AffineIso(inv, inv.apply(self.shift).neg())

    def power(self, n: int) -> "AffineIso":
        if n < 0:
            return self.inverse().power(-n)
        out = AffineIso()
        step = self
        while n:
            if n & 1:
                out = step.compose(out)
            step = step.compose(step)
            n >>= 1
        return out


def translation(vec: SparseVec) -> AffineIso:
    return AffineIso(IDENTITY_MAP, vec)


class FactorRep:
    """Affine isometric action of a f.g. abelian group on a rational space.

    Coordinate basis keys are the integers 0..dim-1; one AffineIso per
    group generator, required to commute pairwise, respect torsion orders,
    and preserve the inner product.
    """

    def __init__(self, group: AbelianGroup, chart, dim: int, gen_maps):
        self.group = group
        self.chart = chart
        self.dim = dim
        self.gen_maps = tuple(gen_maps)
        if len(self.gen_maps) != group.dim:
            raise ConstructionError("need one affine map per generator")
        self._map_cache: Dict[Element, AffineIso] = {}
        self._validate()

    def _validate(self):
        basis = [SparseVec({i: 1}) for i in range(self.dim)]
        for name, m in zip(self.group.gens, self.gen_maps):
            for i, ei in enumerate(basis):
                img_i = m.linear.apply(ei)
                for j in range(i, self.dim):
                    want = ONE if i == j else Fraction(0)
                    if img_i.dot(m.linear.apply(basis[j])) != want:
                        raise InvariantFailure(
                            "isometry", f"generator {name} distorts the metric"
                        )
        for i in range(len(self.gen_maps)):
            for j in range(i + 1, len(self.gen_maps)):
                a, b = self.gen_maps[i], self.gen_maps[j]
                if a.compose(b) != b.compose(a):
                    raise InvariantFailure(
                        "commutation",
                        f"generators {self.group.gens[i]}, {self.group.gens[j]}",
                    )
        for k, m in enumerate(self.group.torsion):
            g = self.gen_maps[self.group.rank + k]
            if g.power(m) != AffineIso():
                raise InvariantFailure(
                    "torsion-order",
                    f"generator {self.group.gens[self.group.rank + k]}"
                    f" does not have order dividing {m}",
                )

    def map_for(self, g: Element) -> AffineIso:
        g = self.group.reduce(g)
        hit = self._map_cache.get(g)
        if hit is not None:
            return hit
        out = AffineIso()
        for c, m in zip(g, self.gen_maps):
            if c:
                out = out.compose(m.power(c))
        self._map_cache[g] = out
        return out

    def basepoint(self) -> AffinePt:
        return AffinePt(self.chart, ZERO)

    def act(self, g: Element, pt: AffinePt) -> AffinePt:
        if pt.chart != self.chart:
            raise ChartMismatchError(f"point not in chart {self.chart}")
        return AffinePt(self.chart, self.map_for(g).apply(pt.direction))

    def weight(self, key) -> Fraction:
        return ONE


def translation_rep(group: AbelianGroup, chart, dim: int, shifts) -> FactorRep:
    """Each generator translates by the given coordinate tuple."""
    maps = [
        translation(SparseVec(enumerate(Fraction(x) for x in s)))
        for s in shifts
    ]
    return FactorRep(group, chart, dim, maps)


def point_rep(group: AbelianGroup, chart) -> FactorRep:
    """The trivial action on a zero-dimensional space."""
    return FactorRep(group, chart, 0, [AffineIso()] * group.dim)


class RestrictedRep:
    """Pull an action back along a subgroup embedding."""

    def __init__(self, rep, emb: DiagonalEmbedding):
        self.rep = rep
        self.emb = emb
        self.group = emb.source
        self.chart = rep.chart

    def basepoint(self) -> AffinePt:
        return self.rep.basepoint()

    def act(self, h: Element, pt: AffinePt) -> AffinePt:
        return self.rep.act(self.emb.apply(h), pt)

    def weight(self, key) -> Fraction:
        return self.rep.weight(key)


class DirectSumRep:
    """Diagonal action on an orthogonal sum; keys wrapped as ("s", i, key)."""

    def __init__(self, reps: Sequence):
        self.reps = tuple(reps)
        self.chart = ("sum",) + tuple(r.chart for r in self.reps)

    def basepoint(self) -> AffinePt:
        d = ZERO
        for i, r in enumerate(self.reps):
            d = d.add(r.basepoint().direction.map_keys(lambda k, i=i: ("s", i, k)))
        return AffinePt(self.chart, d)

    def split(self, direction: SparseVec) -> List[SparseVec]:
        parts = [dict() for _ in self.reps]
        for k, v in direction.items():
            tag, i, inner = k
            parts[i][inner] = v
        return [SparseVec(p) for p in parts]

    def act(self, g, pt: AffinePt) -> AffinePt:
        if pt.chart != self.chart:
            raise ChartMismatchError(f"point not in chart {self.chart}")
        parts = self.split(pt.direction)
        out = ZERO
        for i, (r, part) in enumerate(zip(self.reps, parts)):
            img = r.act(g, AffinePt(r.chart, part)).direction
            out = out.add(img.map_keys(lambda k, i=i: ("s", i, k)))
        return AffinePt(self.chart, out)

    def weight(self, key) -> Fraction:
        tag, i, inner = key
        return self.reps[i].weight(inner)


@dataclass(frozen=True)
class Exhaustion:
    """Nested finite element sets K_1 ⊆ K_2 ⊆ ..., typically cumulative
    word-length balls at a recorded exponent bound."""

    shells: Tuple[Tuple, ...]
    exponent_bound: int = 0

    def __post_init__(self):
        for a, b in zip(self.shells, self.shells[1:]):
            if not set(a) <= set(b):
                raise ConstructionError("exhaustion sets must be nested")


class WeightedSumRep:
    """Orthogonal sum of actions with copy k reweighted by a_k^{-2}.

    Keys wrapped as ("k", k, key), k starting at 1; the weight absorbs the
    scaling so stored coefficients never change.
    """

    def __init__(self, reps: Sequence, a: Sequence[Fraction]):
        self.reps = tuple(reps)
        self.a = tuple(Fraction(x) for x in a)
        if len(self.a) != len(self.reps):
            raise ConstructionError("need one weight per summand")
        if any(x <= 0 for x in self.a):
            raise ConstructionError("weights must be positive")
        self.chart = ("wsum",) + tuple(r.chart for r in self.reps)

    def basepoint(self) -> AffinePt:
        d = ZERO
        for k, r in enumerate(self.reps, start=1):
            d = d.add(
                r.basepoint().direction.map_keys(lambda key, k=k: ("k", k, key))
            )
        return AffinePt(self.chart, d)

    def act(self, g, pt: AffinePt) -> AffinePt:
        if pt.chart != self.chart:
            raise ChartMismatchError(f"point not in chart {self.chart}")
        parts = [dict() for _ in self.reps]
        for key, v in pt.direction.items():
            tag, k, inner = key
            parts[k - 1][inner] = v
        out = ZERO
        for k, (r, part) in enumerate(zip(self.reps, parts), start=1):
            img = r.act(g, AffinePt(r.chart, SparseVec(part))).direction
            out = out.add(img.map_keys(lambda key, k=k: ("k", k, key)))
        return AffinePt(self.chart, out)

    def weight(self, key) -> Fraction:
        tag, k, inner = key
        return self.reps[k - 1].weight(inner) / (self.a[k - 1] ** 2)


def weighted_sum(reps: Sequence, exhaustion: Exhaustion) -> WeightedSumRep:
    """Assemble reps with the schedule a_k = k^2 + max displacement^2 on K_k.

    An empty K_k contributes a plain a_k = k^2 (recorded by the caller).
    """
    if len(exhaustion.shells) != len(reps):
        raise ConstructionError("need one exhaustion set per summand")
    a = []
    for k, (rep, shell) in enumerate(zip(reps, exhaustion.shells), start=1):
        worst = max(
            (displacement_sq(rep, g) for g in shell), default=Fraction(0)
        )
        a.append(Fraction(k * k) + worst)
    return WeightedSumRep(reps, a)


def displacement_sq(rep, g, x: Optional[AffinePt] = None) -> Fraction:
    if x is None:
        x = rep.basepoint()
    return rep.act(g, x).sub(x).norm_sq(rep.weight)


class SubspaceDatum:
    """An affine subspace: basepoint plus an orthogonalized direction span."""

    def __init__(self, rep, basepoint: AffinePt, span: Iterable[SparseVec]):
        if basepoint.chart != rep.chart:
            raise ChartMismatchError("subspace basepoint in the wrong chart")
        self.rep = rep
        self.basepoint = basepoint
        self.span = gram_schmidt_unnormalized(list(span), rep.weight)


def relative_displacement_sq(rep, sub: SubspaceDatum, g, x: AffinePt) -> Fraction:
    """Squared distance from act(g, x) to the affine subspace."""
    r = rep.act(g, x).sub(sub.basepoint)
    resid = r.sub(project_onto_span(r, sub.span, rep.weight))
    return resid.norm_sq(rep.weight)


def center_of_mass_fixed_point(rep, group: AbelianGroup) -> AffinePt:
    """Average of the basepoint orbit under a finite group; exactly fixed."""
    if not group.is_finite():
        raise ConstructionError("center of mass needs a finite group")
    x0 = rep.basepoint()
    total = ZERO
    n = 0
    for g in group.elements(0):
        total = total.add(rep.act(g, x0).direction)
        n += 1
    center = AffinePt(rep.chart, total.scale(Fraction(1, n)))
    for i in range(group.dim):
        g = group.basis_element(i)
        if rep.act(g, center) != center:
            raise InvariantFailure(
                "fixed-point", f"generator {group.gens[i]} moves the center"
            )
    return center

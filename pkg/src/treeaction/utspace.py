"""The affine space of finitely supported mass-one vertex functions.

Points are anchored at the delta function of the root vertex; a point is the
anchor plus a finitely supported direction over edge basis keys.  The
difference delta(v) - delta(w) is the signed characteristic vector of the
geodesic from w to v, each edge oriented from its factor-1 endpoint to its
factor-2 endpoint.  Squared distances between vertex deltas therefore equal
tree distances on the nose.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ChartMismatchError, ConstructionError
from .groupspec import AmalgamSpec, NormalForm
from .linalg import ONE, ZERO, AffinePt, SparseVec
from .tree import TreeAction, Vertex, base_vertex, geodesic_edges


class UTRep:
    """Affine isometric action of an amalgam on the vertex-function space.

    The chart anchor is delta of the root vertex.  ``basepoint()`` defaults
    to the anchor; pass midpoint=True to use the midpoint of the base edge
    instead (a point no single factor fixes, useful when the factor
    representations carry no displacement of their own).
    """

    def __init__(self, spec: AmalgamSpec, midpoint: bool = False):
        self.spec = spec
        self.chart = ("UT", spec.name)
        self.action = TreeAction(spec)
        self.root = base_vertex(1)
        self.midpoint = midpoint

    def basepoint(self) -> AffinePt:
        if self.midpoint:
            return AffinePt(self.chart, SparseVec({(): Fraction(1, 2)}))
        return AffinePt(self.chart, ZERO)

    def delta(self, v: Vertex) -> AffinePt:
        """The vertex delta function as a point of this chart."""
        chain = SparseVec(
            (e, sign) for e, sign in geodesic_edges(self.root, v)
        )
        return AffinePt(self.chart, chain)

    def act(self, gamma: NormalForm, pt: AffinePt) -> AffinePt:
        if pt.chart != self.chart:
            raise ChartMismatchError(f"point not in chart {self.chart}")
        root_shift = self.delta(self.action.on_vertex(gamma, self.root)).direction
        moved = pt.direction.map_keys(lambda e: self.action.on_edge(gamma, e))
        return AffinePt(self.chart, root_shift.add(moved))

    def weight(self, key) -> Fraction:
        return ONE

    def displacement_sq(self, gamma: NormalForm, x: AffinePt = None) -> Fraction:
        if x is None:
            x = self.basepoint()
        return self.act(gamma, x).sub(x).norm_sq()

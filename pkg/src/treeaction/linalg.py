"""Exact sparse inner-product space over the rationals.

Vectors are finite maps from formal basis keys to ``Fraction`` coefficients.
Keys are arbitrary nested tuples of ints/strings; a total order on keys is
provided so serializations are canonical.  Norms are always squared (square
roots would leave the rationals), and inner products may be taken against a
per-key squared-norm weight function.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

from .errors import ChartMismatchError

WeightFn = Callable[[object], Fraction]

ONE = Fraction(1)


def key_sort_token(key):
    """Total order over heterogeneous nested keys (ints < strings < tuples)."""
    if isinstance(key, tuple):
        return (2, tuple(key_sort_token(k) for k in key))
    if isinstance(key, str):
        return (1, key)
    return (0, Fraction(key))


class SparseVec:
    """Immutable finitely supported rational vector; zero coefficients dropped."""

    __slots__ = ("_c",)

    def __init__(self, items: Iterable | Mapping = ()):
        if isinstance(items, Mapping):
            items = items.items()
        c = {}
        for k, v in items:
            v = Fraction(v)
            if not v:
                continue
            acc = c.get(k)
            if acc is None:
                c[k] = v
            else:
                acc = acc + v
                if acc:
                    c[k] = acc
                else:
                    del c[k]
        self._c = c

    @classmethod
    def _raw(cls, mapping):
        vec = object.__new__(cls)
        vec._c = mapping
        return vec

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    def get(self, key):
        return self._c.get(key, Fraction(0))

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    @property
    def is_zero(self):
        return not self._c

    def __eq__(self, other):
        return isinstance(other, SparseVec) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def add(self, other: "SparseVec") -> "SparseVec":
        if not other._c:
            return self
        c = dict(self._c)
        for k, v in other._c.items():
            acc = c.get(k)
            if acc is None:
                c[k] = v
            else:
                acc = acc + v
                if acc:
                    c[k] = acc
                else:
                    del c[k]
        return SparseVec._raw(c)

    def sub(self, other: "SparseVec") -> "SparseVec":
        return self.add(other.neg())

    def neg(self) -> "SparseVec":
        return SparseVec._raw({k: -v for k, v in self._c.items()})

    def scale(self, s) -> "SparseVec":
        s = Fraction(s)
        if not s:
            return SparseVec()
        return SparseVec._raw({k: s * v for k, v in self._c.items()})

    def dot(self, other: "SparseVec", weight: Optional[WeightFn] = None) -> Fraction:
        a, b = self._c, other._c
        if len(b) < len(a):
            a, b = b, a
        total = Fraction(0)
        for k, v in a.items():
            w = b.get(k)
            if w is not None:
                total += v * w if weight is None else v * w * weight(k)
        return total

    def norm_sq(self, weight: Optional[WeightFn] = None) -> Fraction:
        total = Fraction(0)
        for k, v in self._c.items():
            total += v * v if weight is None else v * v * weight(k)
        return total

    def restrict(self, pred) -> "SparseVec":
        return SparseVec._raw({k: v for k, v in self._c.items() if pred(k)})

    def map_keys(self, fn) -> "SparseVec":
        return SparseVec((fn(k), v) for k, v in self._c.items())

    def sorted_items(self):
        return sorted(self._c.items(), key=lambda kv: key_sort_token(kv[0]))

    def serialize(self) -> str:
        """Canonical text form: sorted ``key=num/den`` pairs."""
        parts = [
            f"{_render_key(k)}={v.numerator}/{v.denominator}"
            for k, v in self.sorted_items()
        ]
        return ";".join(parts)

    def __repr__(self):
        return f"SparseVec({self.serialize()!r})"


def _render_key(key):
    if isinstance(key, tuple):
        return "(" + ",".join(_render_key(k) for k in key) + ")"
    return str(key)


ZERO = SparseVec()


class AffinePt:
    """A point of an affine space: chart tag + direction from the chart basepoint."""

    __slots__ = ("chart", "direction")

    def __init__(self, chart, direction: SparseVec = ZERO):
        self.chart = chart
        self.direction = direction

    def sub(self, other: "AffinePt") -> SparseVec:
        if self.chart != other.chart:
            raise ChartMismatchError(f"charts differ: {self.chart} vs {other.chart}")
        return self.direction.sub(other.direction)

    def translate(self, vec: SparseVec) -> "AffinePt":
        return AffinePt(self.chart, self.direction.add(vec))

    def __eq__(self, other):
        return (
            isinstance(other, AffinePt)
            and self.chart == other.chart
            and self.direction == other.direction
        )

    def __hash__(self):
        return hash((self.chart, self.direction))

    def __repr__(self):
        return f"AffinePt({self.chart!r}, {self.direction.serialize()!r})"


def dot(u: SparseVec, v: SparseVec, weight: Optional[WeightFn] = None) -> Fraction:
    return u.dot(v, weight)


def norm_sq(u: SparseVec, weight: Optional[WeightFn] = None) -> Fraction:
    return u.norm_sq(weight)


def gram_schmidt_unnormalized(vectors, weight: Optional[WeightFn] = None):
    """Orthogonalize without normalizing (coefficients stay rational).

    Zero vectors (and dependent residuals) are dropped; the span is preserved.
    """
    basis = []
    for v in vectors:
        r = v
        for u in basis:
            c = r.dot(u, weight)
            if c:
                r = r.sub(u.scale(c / u.norm_sq(weight)))
        if not r.is_zero:
            basis.append(r)
    return basis


def project_onto_span(v: SparseVec, basis, weight: Optional[WeightFn] = None):
    """Orthogonal projection of v onto the span of an orthogonal basis."""
    p = ZERO
    for u in basis:
        c = v.dot(u, weight)
        if c:
            p = p.add(u.scale(c / u.norm_sq(weight)))
    return p

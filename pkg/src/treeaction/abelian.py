"""Finitely generated abelian groups in fixed coordinates, and diagonal
embeddings between them.

A group here is Z^rank x Z/m_1 x ... x Z/m_t with named generators, elements
written as int tuples (free coordinates first).  Embeddings send each source
coordinate to a distinct target coordinate with an integer multiplier; that
is enough for every edge group appearing in the bundled examples and keeps
coset decompositions exact and elementary.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

from .errors import ConstructionError, SpecParseError

Element = Tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: Tuple[int, ...]
    gens: Tuple[str, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise SpecParseError("rank must be nonnegative")
        for m in self.torsion:
            if m < 2:
                raise SpecParseError(f"torsion order must be >= 2, got {m}")
        if len(self.gens) != self.dim:
            raise SpecParseError(
                f"expected {self.dim} generator names, got {len(self.gens)}"
            )
        if len(set(self.gens)) != len(self.gens):
            raise SpecParseError("generator names must be distinct")

    @property
    def dim(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def identity(self) -> Element:
        return (0,) * self.dim

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int:
        if self.rank:
            raise ConstructionError("infinite group has no order")
        return math.prod(self.torsion) if self.torsion else 1

    def reduce(self, coords) -> Element:
        coords = tuple(coords)
        if len(coords) != self.dim:
            raise ConstructionError(
                f"element has {len(coords)} coordinates, expected {self.dim}"
            )
        free = coords[: self.rank]
        tors = tuple(c % m for c, m in zip(coords[self.rank :], self.torsion))
        return free + tors

    def add(self, a: Element, b: Element) -> Element:
        return self.reduce(x + y for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return self.reduce(-x for x in a)

    def scale(self, n: int, a: Element) -> Element:
        return self.reduce(n * x for x in a)

    def element_order(self, a: Element) -> int:
        """Order of a, or 0 if infinite."""
        a = self.reduce(a)
        if any(a[: self.rank]):
            return 0
        n = 1
        for c, m in zip(a[self.rank :], self.torsion):
            if c:
                n = math.lcm(n, m // math.gcd(c, m))
        return n

    def elements(self, bound: int) -> Iterator[Element]:
        """All elements with free coordinates in [-bound, bound].

        For a finite group this is the whole group once bound >= 0.
        """
        free_ranges = [range(-bound, bound + 1)] * self.rank
        tors_ranges = [range(m) for m in self.torsion]
        for coords in itertools.product(*free_ranges, *tors_ranges):
            yield coords

    def render(self, a: Element) -> str:
        """Word in the named generators, e.g. ``x^2*y^-1``; identity is ``e``."""
        a = self.reduce(a)
        parts = []
        for name, c in zip(self.gens, a):
            if c == 0:
                continue
            parts.append(name if c == 1 else f"{name}^{c}")
        return "*".join(parts) if parts else "e"

    def gen_index(self, name: str) -> int:
        try:
            return self.gens.index(name)
        except ValueError:
            raise SpecParseError(f"unknown generator {name!r}") from None

    def basis_element(self, i: int, c: int = 1) -> Element:
        coords = [0] * self.dim
        coords[i] = c
        return self.reduce(coords)


def _mod_solve(a: int, c: int, m: int) -> int:
    """Least x >= 0 with a*x == c (mod m); raises if none exists."""
    g = math.gcd(a, m)
    if c % g:
        raise ConstructionError(f"{a}*x == {c} (mod {m}) has no solution")
    mm = m // g
    x = (c // g) * pow((a // g) % mm, -1, mm) % mm if mm > 1 else 0
    return x


@dataclass(frozen=True)
class DiagonalEmbedding:
    """Injective homomorphism sending source coordinate i to a distinct target
    coordinate with an integer multiplier: (src, tgt, mult) triples."""

    source: AbelianGroup
    target: AbelianGroup
    coordinate_map: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "_decomp_cache", {})
        seen_src, seen_tgt = set(), set()
        for src, tgt, mult in self.coordinate_map:
            if not (0 <= src < self.source.dim and 0 <= tgt < self.target.dim):
                raise SpecParseError("embedding coordinate out of range")
            if src in seen_src or tgt in seen_tgt:
                raise SpecParseError("embedding coordinates must be distinct")
            seen_src.add(src)
            seen_tgt.add(tgt)
            src_free = src < self.source.rank
            tgt_free = tgt < self.target.rank
            if src_free:
                if not tgt_free:
                    raise SpecParseError("free coordinate must map to free coordinate")
                if mult == 0:
                    raise SpecParseError("zero multiplier is not injective")
            else:
                m = self.source.torsion[src - self.source.rank]
                if tgt_free:
                    raise SpecParseError("torsion cannot embed in a free coordinate")
                mp = self.target.torsion[tgt - self.target.rank]
                if (mult * m) % mp:
                    raise SpecParseError(
                        f"mult {mult} does not carry Z/{m} into Z/{mp}"
                    )
                if mp // math.gcd(mult, mp) != m:
                    raise SpecParseError(
                        f"mult {mult} from Z/{m} to Z/{mp} is not injective"
                    )
        if len(seen_src) != self.source.dim:
            raise SpecParseError("every source coordinate must be mapped")

    def apply(self, h: Element) -> Element:
        h = self.source.reduce(h)
        coords = [0] * self.target.dim
        for src, tgt, mult in self.coordinate_map:
            coords[tgt] = mult * h[src]
        return self.target.reduce(coords)

    def index(self):
        """[target : image] as an int, or None when infinite."""
        hit = {tgt: (src, mult) for src, tgt, mult in self.coordinate_map}
        total = 1
        for tgt in range(self.target.dim):
            tgt_free = tgt < self.target.rank
            if tgt not in hit:
                if tgt_free:
                    return None
                total *= self.target.torsion[tgt - self.target.rank]
                continue
            _, mult = hit[tgt]
            if tgt_free:
                total *= abs(mult)
            else:
                mp = self.target.torsion[tgt - self.target.rank]
                total *= math.gcd(mult, mp)
        return total

    def transversal(self, bound: int = 0) -> Tuple[Element, ...]:
        """Canonical coset representatives for image(.) in target.

        Unhit free coordinates are their own representatives; they make the
        index infinite and are enumerated in [-bound, bound].  All other
        coordinates run over their minimal nonnegative residue range.  The
        identity comes first, then sorted order.
        """
        hit = {tgt: (src, mult) for src, tgt, mult in self.coordinate_map}
        ranges = []
        for tgt in range(self.target.dim):
            tgt_free = tgt < self.target.rank
            if tgt not in hit:
                if tgt_free:
                    ranges.append(range(-bound, bound + 1))
                else:
                    ranges.append(range(self.target.torsion[tgt - self.target.rank]))
                continue
            _, mult = hit[tgt]
            if tgt_free:
                ranges.append(range(abs(mult)))
            else:
                mp = self.target.torsion[tgt - self.target.rank]
                ranges.append(range(math.gcd(mult, mp)))
        reps = [self.target.reduce(coords) for coords in itertools.product(*ranges)]
        reps.sort(key=lambda r: (r != self.target.identity, r))
        return tuple(reps)

    def decompose(self, g: Element):
        """Write g = rep + apply(h) with rep in transversal(); returns (rep, h)."""
        g = self.target.reduce(g)
        cached = self._decomp_cache.get(g)
        if cached is not None:
            return cached
        hit = {tgt: (src, mult) for src, tgt, mult in self.coordinate_map}
        rep = [0] * self.target.dim
        h = [0] * self.source.dim
        for tgt in range(self.target.dim):
            c = g[tgt]
            tgt_free = tgt < self.target.rank
            if tgt not in hit:
                rep[tgt] = c
                continue
            src, mult = hit[tgt]
            if tgt_free:
                a = abs(mult)
                r = c % a
                rep[tgt] = r
                h[src] = (c - r) // mult
            else:
                mp = self.target.torsion[tgt - self.target.rank]
                d = math.gcd(mult, mp)
                r = c % d
                rep[tgt] = r
                h[src] = _mod_solve(mult, c - r, mp)
        rep_t = self.target.reduce(rep)
        h_t = self.source.reduce(h)
        if self.target.add(rep_t, self.apply(h_t)) != g:
            raise ConstructionError("coset decomposition failed to reconstruct")
        self._decomp_cache[g] = (rep_t, h_t)
        return rep_t, h_t

    def preimage(self, g: Element) -> Element:
        """The unique h with apply(h) == g; raises if g is not in the image."""
        rep, h = self.decompose(g)
        if rep != self.target.identity:
            raise ConstructionError("element is not in the image of the embedding")
        return h

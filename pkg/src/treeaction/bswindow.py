"""Baumslag-Solitar groups BS(m,n) = <a,t | t a^m t^-1 = a^n>, their trees,
and finite "window" subgroups.

The window of half-width K is the subgroup generated by the conjugates
a_k = t^k a t^-k for k in [-K, K]; it is an iterated amalgam of infinite
cyclic groups along a line.  All copies act on the same rational line, copy
k translating by (n/m)^k per unit; adjacent copies are glued over the edge
group embedded by multiplication by n on the lower copy and by m on the
upper copy, which makes the two translation actions of the edge group agree
exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .abelian import AbelianGroup, DiagonalEmbedding
from .errors import ConstructionError, InvariantFailure, SpecParseError
from .groupspec import AmalgamSpec, BrittonForm, HNNSpec
from .linalg import ONE, ZERO, AffinePt, SparseVec
from .reps import DirectSumRep, Exhaustion, WeightedSumRep, translation_rep, weighted_sum
from .wgamma import AmalgamRepInput

LINE = AbelianGroup(1, (), ("h",))


@dataclass(frozen=True)
class BSSpec:
    m: int
    n: int
    name: str = "bs"

    def __post_init__(self):
        if self.m == 0 or self.n == 0:
            raise SpecParseError("BS(m,n) needs nonzero m and n")

    @property
    def phi(self) -> Fraction:
        return Fraction(self.n, self.m)

    def hnn(self) -> HNNSpec:
        base = AbelianGroup(1, (), ("a",))
        edge = AbelianGroup(1, (), ("h",))
        return HNNSpec(
            name=self.name,
            base=base,
            edge=edge,
            embed_pos=DiagonalEmbedding(edge, base, ((0, 0, self.m),)),
            embed_neg=DiagonalEmbedding(edge, base, ((0, 0, self.n),)),
        )


def britton_normalize(spec: BSSpec, text: str) -> BrittonForm:
    return spec.hnn().parse(text)


def line_translation(spec: BSSpec, form: BrittonForm) -> Fraction:
    """The affine action on the rational line (a -> x+1, t -> x*(n/m)),
    returned as the translation amount; errors if the element scales."""
    phi = spec.phi
    scale, shift = Fraction(1), Fraction(form.head[0])
    for eps, g in form.letters:
        f = phi if eps == 1 else 1 / phi
        # Compose on the right with x -> f*x, then x -> x + g.
        scale = scale * f
        shift = shift + scale * Fraction(g[0])
    if scale != 1:
        raise ConstructionError(
            "element scales the line (nonzero net stable-letter exponent)"
        )
    return shift


# ---------------------------------------------------------------------------
# The Bass-Serre tree of the HNN extension, as labels.
#
# Vertices are cosets gamma*G (G the base group), edges are cosets
# gamma*A with A the positive-embedding image; the edge gamma*A joins
# gamma*t^-1*G and gamma*G, oriented toward the latter.


def bs_vertex_label(hnn: HNNSpec, form: BrittonForm) -> BrittonForm:
    if form.letters:
        eps, _ = form.letters[-1]
        return BrittonForm(form.head, form.letters[:-1] + ((eps, hnn.base.identity),))
    return BrittonForm(hnn.base.identity, ())


def bs_edge_label(hnn: HNNSpec, form: BrittonForm) -> BrittonForm:
    if form.letters:
        eps, g = form.letters[-1]
        rep, _ = hnn.embed_pos.decompose(g)
        return BrittonForm(form.head, form.letters[:-1] + ((eps, rep),))
    rep, _ = hnn.embed_pos.decompose(form.head)
    return BrittonForm(rep, ())


def bs_chain(hnn: HNNSpec, form: BrittonForm) -> List[Tuple[BrittonForm, int]]:
    """Signed edges from the base vertex to form * base vertex."""
    out = []
    for j, (eps, _) in enumerate(form.letters):
        prefix = BrittonForm(form.head, form.letters[:j])
        if eps == 1:
            step = hnn.multiply(prefix, BrittonForm(hnn.base.identity, ((1, hnn.base.identity),)))
        else:
            step = prefix
        out.append((bs_edge_label(hnn, step), eps))
    return out


class BSTreeRep:
    """Affine action on vertex-delta differences of the HNN tree; squared
    distances between vertex deltas equal stable-letter counts."""

    def __init__(self, spec: BSSpec):
        self.spec = spec
        self.hnn = spec.hnn()
        self.chart = ("BST", spec.name)

    def basepoint(self) -> AffinePt:
        return AffinePt(self.chart, ZERO)

    def delta(self, form: BrittonForm) -> AffinePt:
        return AffinePt(self.chart, SparseVec(bs_chain(self.hnn, form)))

    def act(self, gamma: BrittonForm, pt: AffinePt) -> AffinePt:
        root_shift = self.delta(gamma).direction
        moved = pt.direction.map_keys(
            lambda e: bs_edge_label(self.hnn, self.hnn.multiply(gamma, e))
        )
        return AffinePt(self.chart, root_shift.add(moved))

    def weight(self, key) -> Fraction:
        return ONE


class WindowLineRep:
    """All window copies acting on one rational line."""

    def __init__(self, spec: BSSpec):
        self.spec = spec
        self.chart = ("N", spec.name)

    def basepoint(self) -> AffinePt:
        return AffinePt(self.chart, ZERO)

    def act(self, gamma: BrittonForm, pt: AffinePt) -> AffinePt:
        mu = line_translation(self.spec, gamma)
        return AffinePt(self.chart, pt.direction.add(SparseVec({0: mu})))

    def weight(self, key) -> Fraction:
        return ONE


@dataclass(frozen=True)
class WindowSpec:
    bs: BSSpec
    half_width: int

    @property
    def copies(self) -> range:
        return range(-self.half_width, self.half_width + 1)

    @property
    def k_range(self) -> str:
        return f"[{-self.half_width},{self.half_width}]"


def build_window(spec: BSSpec, half_width: int):
    """The window spec plus one validated amalgam-rep datum per line edge.

    The copy-k generator translates the shared line by (n/m)^k; the edge
    between copies k and k+1 embeds by multiplication by n into copy k and
    by m into copy k+1, so both embedded actions translate by n*(n/m)^k.
    Gluing failures surface as a construction error naming the edge.
    """
    if half_width < 0:
        raise ConstructionError("window half-width must be >= 0")
    window = WindowSpec(spec, half_width)
    inputs = []
    for k in range(-half_width, half_width):
        lo = AbelianGroup(1, (), (f"a{k + half_width}",))
        hi = AbelianGroup(1, (), (f"a{k + 1 + half_width}",))
        edge = AbelianGroup(1, (), ("h",))
        pair = AmalgamSpec(
            name=f"{spec.name}_edge{k}",
            edge=edge,
            factor1=lo,
            factor2=hi,
            embed1=DiagonalEmbedding(edge, lo, ((0, 0, spec.n),)),
            embed2=DiagonalEmbedding(edge, hi, ((0, 0, spec.m),)),
        )
        rep_lo = translation_rep(lo, ("N", spec.name, k), 1, [(spec.phi**k,)])
        rep_hi = translation_rep(hi, ("N", spec.name, k + 1), 1, [(spec.phi ** (k + 1),)])
        cols = (SparseVec({0: 1}),)
        try:
            inputs.append(
                AmalgamRepInput(
                    spec=pair, rep1=rep_lo, rep2=rep_hi, dim_w=1, j1=cols, j2=cols
                )
            )
        except InvariantFailure as exc:
            raise ConstructionError(
                f"gluing failed on window edge ({k},{k + 1}): {exc}"
            ) from exc
    return window, inputs


def window_generators(window: WindowSpec) -> Dict[int, BrittonForm]:
    """a_k = t^k a t^-k for each copy index k in the window."""
    hnn = window.bs.hnn()
    out = {}
    for k in window.copies:
        letters: List = [("t", 1)] * k if k >= 0 else [("t", -1)] * (-k)
        letters.append(("g", (1,)))
        letters.extend([("t", -1)] * k if k >= 0 else [("t", 1)] * (-k))
        out[k] = hnn.from_letters(letters)
    return out


def window_shells(window: WindowSpec, max_len: int) -> List[List[BrittonForm]]:
    """Shells of window elements by minimal generator word length, deduped
    through Britton forms; shell 0 is the identity alone."""
    hnn = window.bs.hnn()
    gens = window_generators(window)
    steps = []
    for k in sorted(gens):
        steps.append(gens[k])
        steps.append(hnn.invert(gens[k]))
    seen = {hnn.identity_form()}
    shells = [[hnn.identity_form()]]
    frontier = [hnn.identity_form()]
    for _ in range(max_len):
        fresh = []
        for w in frontier:
            for s in steps:
                nxt = hnn.multiply(w, s)
                if nxt not in seen:
                    seen.add(nxt)
                    fresh.append(nxt)
        shells.append(fresh)
        frontier = fresh
    return shells


def window_rep(spec: BSSpec) -> DirectSumRep:
    """Line translation plus tree displacement, both exact."""
    return DirectSumRep([WindowLineRep(spec), BSTreeRep(spec)])


def window_assembly(
    spec: BSSpec, window: WindowSpec, shells: List[List[BrittonForm]], exponent_bound: int = 0
) -> WeightedSumRep:
    """Weighted sum of copies of the window representation over the
    cumulative shell exhaustion; a_k = k^2 + max displacement^2 on ball k."""
    base = window_rep(spec)
    cumulative = []
    acc: List[BrittonForm] = []
    for shell in shells[1:]:
        acc = acc + shell
        cumulative.append(tuple(acc))
    exhaustion = Exhaustion(tuple(cumulative), exponent_bound)
    return weighted_sum([base] * len(cumulative), exhaustion)

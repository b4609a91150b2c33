"""Amalgamated products and HNN extensions of abelian groups, with exact
normal forms.

An amalgam is G1 *_H G2 where H embeds in each abelian factor by a diagonal
embedding of finite index.  Elements are kept as alternating sequences of
nontrivial coset representatives followed by an H tail; since the factors
are abelian, H is central in each and the tail can always be pushed to the
right, which makes the representative sequence canonical.

An HNN extension is <G, t | t i1(h) t^-1 = i2(h)> for two embeddings of the
same abelian H into abelian G.  Elements are kept in pinch-free Britton form
with coset representatives between stable letters, again canonical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .abelian import AbelianGroup, DiagonalEmbedding, Element
from .errors import ConstructionError, SpecParseError
from .words import parse_word

# ---------------------------------------------------------------------------
# Amalgamated products


@dataclass(frozen=True)
class AmalgamSpec:
    name: str
    edge: AbelianGroup
    factor1: AbelianGroup
    factor2: AbelianGroup
    embed1: DiagonalEmbedding
    embed2: DiagonalEmbedding

    def __post_init__(self):
        for i, emb in ((1, self.embed1), (2, self.embed2)):
            if emb.source != self.edge or emb.target != self.factor(i):
                raise SpecParseError(f"embedding {i} does not match its groups")
        overlap = set(self.factor1.gens) & set(self.factor2.gens)
        if overlap:
            raise SpecParseError(f"factor generator names overlap: {sorted(overlap)}")

    def factor(self, i: int) -> AbelianGroup:
        if i == 1:
            return self.factor1
        if i == 2:
            return self.factor2
        raise ConstructionError(f"factor index must be 1 or 2, got {i}")

    def embedding(self, i: int) -> DiagonalEmbedding:
        return self.embed1 if i == 1 else self.embed2

    # -- normal forms -------------------------------------------------------

    def identity_form(self) -> "NormalForm":
        return NormalForm((), self.edge.identity)

    def append_letter(self, form: "NormalForm", i: int, g: Element) -> "NormalForm":
        """Right-multiply a normal form by a letter g of factor i."""
        emb = self.embedding(i)
        G = self.factor(i)
        sylls = form.syllables
        t = G.add(emb.apply(form.tail), G.reduce(g))
        if sylls and sylls[-1][0] == i:
            t = G.add(sylls[-1][1], t)
            sylls = sylls[:-1]
        rep, h = emb.decompose(t)
        if rep == G.identity:
            return NormalForm(sylls, h)
        return NormalForm(sylls + ((i, rep),), h)

    def from_letters(self, letters) -> "NormalForm":
        form = self.identity_form()
        for i, g in letters:
            form = self.append_letter(form, i, g)
        return form

    def multiply(self, a: "NormalForm", b: "NormalForm") -> "NormalForm":
        form = a
        for i, c in b.syllables:
            form = self.append_letter(form, i, c)
        if b.tail != self.edge.identity:
            form = self.append_letter(form, 1, self.embed1.apply(b.tail))
        return form

    def invert(self, a: "NormalForm") -> "NormalForm":
        letters = [(1, self.factor1.neg(self.embed1.apply(a.tail)))]
        for i, c in reversed(a.syllables):
            letters.append((i, self.factor(i).neg(c)))
        return self.from_letters(letters)

    def parse(self, text: str) -> "NormalForm":
        """Evaluate a word in the factor generators."""
        letters = []
        for name, exp in parse_word(text):
            if name in self.factor1.gens:
                i, G = 1, self.factor1
            elif name in self.factor2.gens:
                i, G = 2, self.factor2
            else:
                raise SpecParseError(f"unknown generator {name!r}")
            letters.append((i, G.basis_element(G.gen_index(name), exp)))
        return self.from_letters(letters)

    def render(self, form: "NormalForm") -> str:
        parts = [self.factor(i).render(c) for i, c in form.syllables]
        if form.tail != self.edge.identity:
            parts.append(self.factor1.render(self.embed1.apply(form.tail)))
        return "*".join(parts) if parts else "e"

    # -- enumeration --------------------------------------------------------

    def nontrivial_reps(self, i: int, bound: int = 0) -> Tuple[Element, ...]:
        return self.embedding(i).transversal(bound)[1:]

    def syllable_sequences(
        self, k: int, bound: int = 0
    ) -> Iterator[Tuple[Tuple[int, Element], ...]]:
        """All alternating sequences of k nontrivial coset representatives,
        free transversal coordinates truncated to [-bound, bound]."""
        if k == 0:
            yield ()
            return
        for start in (1, 2):
            factors = [start if j % 2 == 0 else 3 - start for j in range(k)]
            pools = [self.nontrivial_reps(f, bound) for f in factors]
            for combo in itertools.product(*pools):
                yield tuple(zip(factors, combo))

    def shell(self, k: int, bound: int = 0) -> Iterator["NormalForm"]:
        """All elements of syllable length exactly k whose transversal reps
        and H tail have free coordinates in [-bound, bound]."""
        for sylls in self.syllable_sequences(k, bound):
            for tail in self.edge.elements(bound):
                yield NormalForm(sylls, self.edge.reduce(tail))

    def ball(self, k: int, bound: int = 0) -> Iterator["NormalForm"]:
        for j in range(k + 1):
            yield from self.shell(j, bound)


@dataclass(frozen=True)
class NormalForm:
    """Alternating nontrivial coset reps, then an edge-group tail."""

    syllables: Tuple[Tuple[int, Element], ...]
    tail: Element

    def __post_init__(self):
        prev = None
        for i, _ in self.syllables:
            if i == prev:
                raise ConstructionError("syllables must alternate factors")
            prev = i

    @property
    def length(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables and not any(self.tail)

    def first_factor(self) -> int:
        if not self.syllables:
            raise ConstructionError("identity-coset element has no leading factor")
        return self.syllables[0][0]


# ---------------------------------------------------------------------------
# HNN extensions


@dataclass(frozen=True)
class HNNSpec:
    name: str
    base: AbelianGroup
    edge: AbelianGroup
    embed_pos: DiagonalEmbedding  # conjugation by t sends embed_pos(h) to embed_neg(h)
    embed_neg: DiagonalEmbedding

    def __post_init__(self):
        for tag, emb in (("pos", self.embed_pos), ("neg", self.embed_neg)):
            if emb.source != self.edge or emb.target != self.base:
                raise SpecParseError(f"{tag} embedding does not match its groups")
        if "t" in self.base.gens:
            raise SpecParseError("'t' is reserved for the stable letter")

    def _pinch_embedding(self, eps: int) -> DiagonalEmbedding:
        # t g t^-1 pinches when g is in the image of embed_pos,
        # t^-1 g t pinches when g is in the image of embed_neg.
        return self.embed_pos if eps == 1 else self.embed_neg

    def _other_embedding(self, eps: int) -> DiagonalEmbedding:
        return self.embed_neg if eps == 1 else self.embed_pos

    def identity_form(self) -> "BrittonForm":
        return BrittonForm(self.base.identity, ())

    def append_group(self, form: "BrittonForm", g: Element) -> "BrittonForm":
        g = self.base.reduce(g)
        if not form.letters:
            return BrittonForm(self.base.add(form.head, g), ())
        eps, last = form.letters[-1]
        return BrittonForm(
            form.head, form.letters[:-1] + ((eps, self.base.add(last, g)),)
        )

    def append_stable(self, form: "BrittonForm", eps: int) -> "BrittonForm":
        if eps not in (1, -1):
            raise ConstructionError("stable letter exponent must be +1 or -1")
        if form.letters:
            last_eps, last_g = form.letters[-1]
            if last_eps == -eps:
                emb = self._pinch_embedding(last_eps)
                rep, h = emb.decompose(last_g)
                if rep == self.base.identity:
                    # t^last_eps g t^eps collapses to a base-group element.
                    passed = self._other_embedding(last_eps).apply(h)
                    pinched = BrittonForm(form.head, form.letters[:-1])
                    return self.append_group(pinched, passed)
        return BrittonForm(form.head, form.letters + ((eps, self.base.identity),))

    def from_letters(self, letters) -> "BrittonForm":
        form = self.identity_form()
        for kind, val in letters:
            if kind == "t":
                form = self.append_stable(form, val)
            else:
                form = self.append_group(form, val)
        return self.canonicalize(form)

    def canonicalize(self, form: "BrittonForm") -> "BrittonForm":
        """Push coset residues rightward so equal elements compare equal."""
        if not form.letters:
            return form
        head = form.head
        letters = list(form.letters)
        # Residue of the head moves through the first stable letter, and so on.
        carry = head
        eps0, _ = letters[0]
        emb = self._other_embedding(eps0)  # t^eps is preceded by emb-cosets
        rep, h = emb.decompose(carry)
        head = rep
        push = self._pinch_embedding(eps0).apply(h)
        for j in range(len(letters)):
            eps, g = letters[j]
            g = self.base.add(g, push)
            if j + 1 < len(letters):
                eps_next, _ = letters[j + 1]
                emb = self._other_embedding(eps_next)
                rep, h = emb.decompose(g)
                letters[j] = (eps, rep)
                push = self._pinch_embedding(eps_next).apply(h)
            else:
                letters[j] = (eps, g)
        return BrittonForm(head, tuple(letters))

    def multiply(self, a: "BrittonForm", b: "BrittonForm") -> "BrittonForm":
        form = a
        form = self.append_group(form, b.head)
        for eps, g in b.letters:
            form = self.append_stable(form, eps)
            form = self.append_group(form, g)
        return self.canonicalize(form)

    def invert(self, a: "BrittonForm") -> "BrittonForm":
        letters: List = [("g", self.base.neg(a.letters[-1][1]))] if a.letters else []
        for j in range(len(a.letters) - 1, -1, -1):
            eps, _ = a.letters[j]
            letters.append(("t", -eps))
            prev = a.letters[j - 1][1] if j else a.head
            letters.append(("g", self.base.neg(prev)))
        if not a.letters:
            letters = [("g", self.base.neg(a.head))]
        return self.from_letters(letters)

    def parse(self, text: str) -> "BrittonForm":
        letters = []
        for name, exp in parse_word(text):
            if name == "t":
                sign = 1 if exp > 0 else -1
                for _ in range(abs(exp)):
                    letters.append(("t", sign))
            else:
                G = self.base
                letters.append(("g", G.basis_element(G.gen_index(name), exp)))
        return self.from_letters(letters)

    def render(self, form: "BrittonForm") -> str:
        parts = []
        if form.head != self.base.identity or not form.letters:
            parts.append(self.base.render(form.head))
        letters = form.letters
        i = 0
        while i < len(letters):
            eps, g = letters[i]
            # merge a run of same-sign stable letters with nothing between
            j = i
            while (
                j + 1 < len(letters)
                and letters[j][1] == self.base.identity
                and letters[j + 1][0] == eps
            ):
                j += 1
                g = letters[j][1]
            count = (j - i + 1) * eps
            parts.append("t" if count == 1 else f"t^{count}")
            if g != self.base.identity:
                parts.append(self.base.render(g))
            i = j + 1
        return "*".join(parts)


@dataclass(frozen=True)
class BrittonForm:
    """head * t^eps1 * g1 * ... * t^epsk * gk, pinch-free."""

    head: Element
    letters: Tuple[Tuple[int, Element], ...]

    @property
    def length(self) -> int:
        """Number of stable letters."""
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters and not any(self.head)

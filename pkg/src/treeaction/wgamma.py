"""The amalgam representation assembled from two factor actions sharing a
common subspace.

Data: affine isometric actions of the factors on rational spaces W1, W2,
plus isometric embeddings J1, J2 of a common space W whose pulled-back edge
group actions agree.  The carrier is W together with a tower of induced
complement blocks, one block per alternating address word over {1, 2}; a
basis vector of a block is addressed by a TowerBasisKey

    ("T", omega, (c_1, ..., c_{k-1}), leaf)

where omega is the address (written as a string like "121"), the c_j are
nontrivial coset representatives in the factor named by omega[j-1], and
leaf indexes the orthogonal complement basis of W_{omega[-1]}.  A factor
element acts on its own W_i portion through the factor representation and
permutes/twists tower keys by coset decomposition; vectors stay finitely
supported so every computation terminates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .abelian import Element
from .errors import ChartMismatchError, ConstructionError, InvariantFailure
from .groupspec import AmalgamSpec, NormalForm
from .linalg import ONE, ZERO, AffinePt, SparseVec, gram_schmidt_unnormalized
from .reps import DirectSumRep, FactorRep, LinearMap
from .utspace import UTRep

WKey = Tuple[str, int]
TowerKey = Tuple[str, str, Tuple[Element, ...], int]


@dataclass(frozen=True)
class AmalgamRepInput:
    """Factor representations with a common embedded subspace.

    j1/j2 are given column-wise: column a is the image in W_i of the a-th
    coordinate vector of W.  Columns must be orthonormal, the image affine
    subspace must be invariant under the edge group, and the two pulled-back
    edge group actions on W must coincide.
    """

    spec: AmalgamSpec
    rep1: FactorRep
    rep2: FactorRep
    dim_w: int
    j1: Tuple[SparseVec, ...]
    j2: Tuple[SparseVec, ...]

    def __post_init__(self):
        if self.rep1.group != self.spec.factor1 or self.rep2.group != self.spec.factor2:
            raise ConstructionError("factor representations do not match the spec")
        for tag, cols, rep in (("j1", self.j1, self.rep1), ("j2", self.j2, self.rep2)):
            if len(cols) != self.dim_w:
                raise ConstructionError(f"{tag} must have one column per W coordinate")
            for a in range(self.dim_w):
                for b in range(a, self.dim_w):
                    want = ONE if a == b else Fraction(0)
                    if cols[a].dot(cols[b]) != want:
                        raise InvariantFailure(
                            "isometric-embedding", f"{tag} columns not orthonormal"
                        )
        # The two pulled-back edge actions must agree on W.
        gens = [
            self.spec.edge.basis_element(i) for i in range(self.spec.edge.dim)
        ]
        for h in gens:
            m1 = self._pullback(1, h)
            m2 = self._pullback(2, h)
            if m1 != m2:
                raise InvariantFailure(
                    "edge-action-agreement",
                    f"edge generator {self.spec.edge.render(h)} pulls back "
                    "differently through the two factors",
                )

    def factor_rep(self, i: int) -> FactorRep:
        return self.rep1 if i == 1 else self.rep2

    def j_cols(self, i: int) -> Tuple[SparseVec, ...]:
        return self.j1 if i == 1 else self.j2

    def _pullback(self, i: int, h: Element):
        """The edge element's action on W read through factor i, as a pair
        (linear columns, shift) in W coordinates; exact or error."""
        rep = self.factor_rep(i)
        cols = self.j_cols(i)
        m = rep.map_for(self.spec.embedding(i).apply(h))
        lin_cols = []
        for a in range(self.dim_w):
            img = m.linear.apply(cols[a])
            coeffs, resid = _resolve(img, cols)
            if resid:
                raise InvariantFailure(
                    "subspace-invariance",
                    f"edge action leaves j{i}(W) (linear part)",
                )
            lin_cols.append(coeffs)
        shift, resid = _resolve(m.shift, cols)
        if resid:
            raise InvariantFailure(
                "subspace-invariance", f"edge action leaves j{i}(W) (shift)"
            )
        return tuple(lin_cols), shift

    def w_action(self, h: Element):
        """The edge group action on W coordinates: (columns, shift)."""
        rep = self.factor_rep(1)
        cols = self.j_cols(1)
        m = rep.map_for(self.spec.embedding(1).apply(h))
        lin_cols = []
        for a in range(self.dim_w):
            coeffs, resid = _resolve(m.linear.apply(cols[a]), cols)
            if resid:
                raise ConstructionError("edge action does not preserve W")
            lin_cols.append(coeffs)
        shift, resid = _resolve(m.shift, cols)
        if resid:
            raise ConstructionError("edge action does not preserve W")
        return tuple(lin_cols), shift


def _resolve(v: SparseVec, ortho_cols: Sequence[SparseVec]):
    """Write v as a combination of orthonormal columns plus a residual.

    Returns (coefficient SparseVec over column indices, residual vector).
    """
    coeffs = {}
    rest = v
    for a, col in enumerate(ortho_cols):
        c = v.dot(col)
        if c:
            coeffs[a] = c
            rest = rest.sub(col.scale(c))
    return SparseVec(coeffs), rest


class QuotientRep:
    """The orthogonal complement of the embedded W inside one factor space,
    carrying the projected (linear, isometric) edge group action."""

    def __init__(self, inp: AmalgamRepInput, i: int):
        self.i = i
        self.spec = inp.spec
        rep = inp.factor_rep(i)
        cols = inp.j_cols(i)
        coord_basis = [SparseVec({a: 1}) for a in range(rep.dim)]
        full = gram_schmidt_unnormalized(list(cols) + coord_basis)
        self.basis: List[SparseVec] = full[len(cols):]
        self.norms = [u.norm_sq() for u in self.basis]
        # Edge generator actions in complement coordinates.
        self.gen_mats: List[LinearMap] = []
        for gi in range(inp.spec.edge.dim):
            h = inp.spec.edge.basis_element(gi)
            m = rep.map_for(inp.spec.embedding(i).apply(h))
            colmap = {}
            for b, u in enumerate(self.basis):
                img = m.linear.apply(u)
                coeffs = {}
                rest = img
                for bb, uu in enumerate(self.basis):
                    c = img.dot(uu)
                    if c:
                        coeffs[bb] = c / self.norms[bb]
                        rest = rest.sub(uu.scale(c / self.norms[bb]))
                if rest:
                    raise ConstructionError(
                        f"edge group moves the complement of j{i}(W) off itself"
                    )
                colmap[b] = SparseVec(coeffs)
            self.gen_mats.append(LinearMap(colmap))
        self._cache: Dict[Element, LinearMap] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def action_of(self, h: Element) -> LinearMap:
        """The (linear) action of an edge element on complement coordinates."""
        h = self.spec.edge.reduce(h)
        hit = self._cache.get(h)
        if hit is not None:
            return hit
        out = LinearMap({})
        for c, m in zip(h, self.gen_mats):
            if c:
                step = m if c > 0 else m.inverse()
                for _ in range(abs(c)):
                    out = step.compose(out)
        self._cache[h] = out
        return out


class WGammaRep:
    """The assembled amalgam action on W plus the induced tower."""

    def __init__(self, inp: AmalgamRepInput):
        self.inp = inp
        self.spec = inp.spec
        self.chart = ("WGamma", inp.spec.name)
        self.quot = {1: QuotientRep(inp, 1), 2: QuotientRep(inp, 2)}
        # Append-only registry of tower keys some action has touched.
        self.seen_keys: Dict[TowerKey, None] = {}

    # -- carrier ------------------------------------------------------------

    def basepoint(self) -> AffinePt:
        return AffinePt(self.chart, ZERO)

    def weight(self, key) -> Fraction:
        if key[0] == "W":
            return ONE
        _, omega, _, leaf = key
        return self.quot[int(omega[-1])].norms[leaf]

    def _note(self, key: TowerKey):
        if key[0] == "T":
            self.seen_keys.setdefault(key, None)

    # -- the action ---------------------------------------------------------

    def act(self, gamma: NormalForm, pt: AffinePt) -> AffinePt:
        if pt.chart != self.chart:
            raise ChartMismatchError(f"point not in chart {self.chart}")
        d = pt.direction
        letters: List[Tuple[int, Element]] = list(gamma.syllables)
        if gamma.tail != self.spec.edge.identity:
            letters.append((1, self.spec.embed1.apply(gamma.tail)))
        for i, g in reversed(letters):
            d = self.act_factor(i, g, d)
        return AffinePt(self.chart, d)

    def act_factor(self, i: int, g: Element, d: SparseVec) -> SparseVec:
        """One factor element applied to a direction vector (affine, exact)."""
        G = self.spec.factor(i)
        emb = self.spec.embedding(i)
        g = G.reduce(g)
        w_coeffs: Dict[int, Fraction] = {}
        own_leaves: Dict[int, Fraction] = {}
        rest: List[Tuple[TowerKey, Fraction]] = []
        for key, c in d.items():
            if key[0] == "W":
                w_coeffs[key[1]] = c
            elif key[1] == str(i):
                own_leaves[key[3]] = c
            else:
                rest.append((key, c))
        acc = dict(self._act_portion(i, g, w_coeffs, own_leaves).items())

        def bump(key, val):
            cur = acc.get(key)
            if cur is None:
                acc[key] = val
            elif cur + val:
                acc[key] = cur + val
            else:
                del acc[key]

        for key, c in rest:
            _, omega, path, leaf = key
            if omega[0] == str(i):
                # g combines with the block's leading representative.
                rep, h = emb.decompose(G.add(g, path[0]))
                if rep == G.identity:
                    new_omega, new_path = omega[1:], path[1:]
                else:
                    new_omega, new_path = omega, (rep,) + path[1:]
            else:
                # g lands on the trivial copy inside the induced block.
                rep, h = emb.decompose(g)
                if rep == G.identity:
                    new_omega, new_path = omega, path
                else:
                    new_omega, new_path = str(i) + omega, (rep,) + path
            for tkey, cv in self._twist(new_omega, new_path, leaf, h).items():
                bump(tkey, c * cv)
        return SparseVec(acc)

    def _act_portion(self, i, g, w_coeffs, own_leaves) -> SparseVec:
        """Factor i on its own portion: W through j_i plus the complement."""
        rep = self.inp.factor_rep(i)
        cols = self.inp.j_cols(i)
        quot = self.quot[i]
        vec = ZERO
        for a, c in w_coeffs.items():
            vec = vec.add(cols[a].scale(c))
        for b, c in own_leaves.items():
            vec = vec.add(quot.basis[b].scale(c))
        img = rep.map_for(g).apply(vec)
        coeffs, residual = _resolve(img, cols)
        out = {("W", a): c for a, c in coeffs.items()}
        for b, u in enumerate(quot.basis):
            c = residual.dot(u)
            if c:
                c = c / quot.norms[b]
                key = ("T", str(i), (), b)
                out[key] = c
                self._note(key)
                residual = residual.sub(u.scale(c))
        if residual:
            raise ConstructionError(
                f"factor {i} action leaves its own portion of the carrier"
            )
        return SparseVec(out)

    def _twist(self, omega, path, leaf, h) -> SparseVec:
        """An edge element twisting a tower basis vector: it passes through
        the representative path untouched and acts on the leaf alone."""
        if not omega:
            raise ConstructionError("tower address collapsed below the root")
        quot = self.quot[int(omega[-1])]
        col = quot.action_of(h).cols.get(leaf)
        if col is None:
            key = ("T", omega, path, leaf)
            self._note(key)
            return SparseVec({key: 1})
        items = []
        for b, c in col.items():
            key = ("T", omega, path, b)
            self._note(key)
            items.append((key, c))
        return SparseVec(items)

    # -- derived quantities ---------------------------------------------------

    def phi_x(self, gamma: NormalForm, x: AffinePt) -> SparseVec:
        """Projection of gamma x onto the tower blocks at gamma's length."""
        k = gamma.length
        if k == 0:
            raise ConstructionError("phi_x is only defined for length >= 1")
        y = self.act(gamma, x)
        return y.direction.restrict(
            lambda key: key[0] == "T" and len(key[1]) == k
        )


def build_wgamma(inp: AmalgamRepInput) -> WGammaRep:
    return WGammaRep(inp)


def assembled_rep(inp: AmalgamRepInput) -> DirectSumRep:
    """The proper assembly: tower representation plus the tree space, based
    at the midpoint of the base edge so no factor fixes the basepoint."""
    return DirectSumRep([WGammaRep(inp), UTRep(inp.spec, midpoint=True)])


COMPONENT_NAMES = ("W", "tower", "tree")


def displacement_components(rep: DirectSumRep, gamma: NormalForm):
    """Split the squared displacement of the two-summand assembly into the
    W part, the tower part, and the tree part."""
    x = rep.basepoint()
    diff = rep.act(gamma, x).sub(x)
    totals = {name: Fraction(0) for name in COMPONENT_NAMES}
    for key, c in diff.items():
        _, idx, inner = key
        if idx == 1:
            name = "tree"
        elif inner[0] == "W":
            name = "W"
        else:
            name = "tower"
        totals[name] += c * c * rep.weight(key)
    return totals


def serialize_tower_key(spec: AmalgamSpec, key: TowerKey) -> str:
    _, omega, path, leaf = key
    reps = []
    for ch, c in zip(omega, path):
        reps.append(spec.factor(int(ch)).render(c))
    return f"{omega}|{','.join(reps)}|{leaf}"

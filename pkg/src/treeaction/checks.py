"""Invariant suites runnable from the CLI and reused by the test suite.

Each suite returns a list of CheckResult(name, ok, witness); witnesses are
short human-readable strings naming the violated property and the smallest
offending input found.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .errors import ConstructionError
from .groupspec import AmalgamSpec, NormalForm
from .linalg import AffinePt, SparseVec
from .reps import displacement_sq
from .specfile import ParsedSpec
from .tree import TreeBall, geodesic_edges
from .utspace import UTRep
from .wgamma import AmalgamRepInput, WGammaRep, assembled_rep
from . import bswindow

SEED = 20240915


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: Optional[str] = None


def _result(name, ok, witness=None):
    return CheckResult(name, ok, witness if not ok else None)


def suite_ut_distance(parsed: ParsedSpec) -> List[CheckResult]:
    """norm_sq(delta(v) - delta(w)) equals the tree distance, all ball pairs."""
    spec = parsed.amalgam
    radius = min(parsed.bounds["radius"], 4)
    ball = TreeBall(spec, radius, parsed.bounds["exponent_bound"])
    ut = UTRep(spec)
    deltas = {v: ut.delta(v) for v in ball.vertices}
    for v, w in itertools.combinations(sorted(deltas, key=repr), 2):
        got = deltas[v].sub(deltas[w]).norm_sq()
        want = Fraction(len(geodesic_edges(v, w)))
        if got != want:
            return [
                _result(
                    "ut-distance",
                    False,
                    f"pair ({v},{w}): norm_sq {got} != distance {want}",
                )
            ]
    return [_result("ut-distance", True)]


def suite_h_agreement(parsed: ParsedSpec, min_probes: int = 50) -> List[CheckResult]:
    """The edge group acts identically through both factor structures."""
    spec = parsed.amalgam
    wg = WGammaRep(parsed.rep_input)
    bound = parsed.bounds["exponent_bound"]
    probes = [wg.basepoint().direction]
    probes += [SparseVec({("W", a): 1}) for a in range(parsed.rep_input.dim_w)]
    # Push the basepoint around to reach tower keys, then probe those too.
    rng = random.Random(SEED)
    shell_elems = list(spec.ball(4, max(bound, 1)))
    rng.shuffle(shell_elems)
    for gamma in shell_elems:
        probes.append(wg.act(gamma, wg.basepoint()).direction)
        if len(probes) + len(wg.seen_keys) >= min_probes:
            break
    for key in wg.seen_keys:
        probes.append(SparseVec({key: 1}))
    # Top up with rational combinations so every spec gets a full pool.
    while len(probes) < min_probes:
        a, b = rng.choice(probes), rng.choice(probes)
        probes.append(a.add(b.scale(Fraction(rng.randint(1, 5), rng.randint(1, 3)))))
    for gi in range(spec.edge.dim):
        h = spec.edge.basis_element(gi)
        g1 = spec.embed1.apply(h)
        g2 = spec.embed2.apply(h)
        for p, d in enumerate(probes):
            via1 = wg.act_factor(1, g1, d)
            via2 = wg.act_factor(2, g2, d)
            if via1 != via2:
                return [
                    _result(
                        "h-agreement",
                        False,
                        f"edge generator {spec.edge.gens[gi]} on probe #{p}: "
                        f"{via1.serialize()} != {via2.serialize()}",
                    )
                ]
    return [_result("h-agreement", True)]


def shell_displacement_minima(parsed: ParsedSpec, k_max: int, bound: int):
    """Minimum of total squared displacement on each shell k = 1..k_max.

    Walks the shells by prepending one syllable at a time, so the acted
    points of every right-hand part are computed once and shared by all
    elements extending it. Raises InvariantFailure if any enumerated
    element of a positive shell has zero displacement.
    """
    from .errors import InvariantFailure

    spec = parsed.amalgam
    rep = assembled_rep(parsed.rep_input)
    base = rep.basepoint()
    tails = [spec.edge.reduce(h) for h in spec.edge.elements(bound)]
    pts = [rep.act(NormalForm((), h), base) for h in tails]
    minima: List[Optional[Fraction]] = [None] * (k_max + 1)

    def extend(depth: int, lead: int, layer: List[AffinePt]):
        if depth == k_max:
            return
        for i in (1, 2):
            if i == lead:
                continue
            for r in spec.nontrivial_reps(i, bound):
                step = NormalForm(((i, r),), spec.edge.identity)
                new_layer = [rep.act(step, p) for p in layer]
                for p in new_layer:
                    d = p.sub(base).norm_sq(rep.weight)
                    if d == 0:
                        raise InvariantFailure(
                            "shell-positivity",
                            f"zero displacement on shell {depth + 1}",
                        )
                    cur = minima[depth + 1]
                    if cur is None or d < cur:
                        minima[depth + 1] = d
                extend(depth + 1, i, new_layer)

    extend(0, 0, pts)
    return minima[1:]


def additive_pairs(spec: AmalgamSpec, max_total: int, bound: int):
    """(gamma1, gamma2) with ell additive and ell(gamma2) >= 1."""
    shells = [list(spec.shell(k, bound)) for k in range(max_total + 1)]
    for k1 in range(max_total):
        for k2 in range(1, max_total - k1 + 1):
            for g2 in shells[k2]:
                for g1 in shells[k1]:
                    if spec.multiply(g1, g2).length == k1 + k2:
                        yield g1, g2


def suite_tower_projection(parsed: ParsedSpec, max_total: Optional[int] = None) -> List[CheckResult]:
    """Tower-projection norms: additive products keep the right factor's
    projection norm; a one-syllable left factor maps foreign tower blocks
    off themselves orthogonally."""
    spec = parsed.amalgam
    wg = WGammaRep(parsed.rep_input)
    bound = parsed.bounds["exponent_bound"]
    if max_total is None:
        max_total = min(parsed.bounds["max_syllables"], 4)
    x0 = wg.basepoint()
    shells = [list(spec.shell(k, bound)) for k in range(max_total + 1)]
    for k2 in range(1, max_total + 1):
        for g2 in shells[k2]:
            x2 = wg.act(g2, x0)
            phi2 = x2.direction.restrict(
                lambda key: key[0] == "T" and len(key[1]) == k2
            )
            n2 = phi2.norm_sq(wg.weight)
            for k1 in range(0, max_total - k2 + 1):
                for g1 in shells[k1]:
                    prod = spec.multiply(g1, g2)
                    if prod.length != k1 + k2:
                        continue
                    y = wg.act(g1, x2)
                    phi = y.direction.restrict(
                        lambda key: key[0] == "T" and len(key[1]) == k1 + k2
                    )
                    n = phi.norm_sq(wg.weight)
                    if n != n2:
                        return [
                            _result(
                                "tower-projection",
                                False,
                                f"gamma1={spec.render(g1)} gamma2={spec.render(g2)}: "
                                f"|phi(g1 g2)|^2 = {n} != |phi(g2)|^2 = {n2}",
                            )
                        ]
    results = [_result("tower-projection", True)]
    results.append(_block_orthogonality(parsed, wg, bound))
    return results


def _block_orthogonality(parsed: ParsedSpec, wg: WGammaRep, bound: int) -> CheckResult:
    """A one-syllable element of factor i sends any tower block whose
    address starts with the other factor into fresh blocks, orthogonally."""
    spec = parsed.amalgam
    if not wg.seen_keys:
        x0 = wg.basepoint()
        for gamma in spec.ball(2, min(bound, 1)):
            wg.act(gamma, x0)
    keys = list(wg.seen_keys)
    for g1 in spec.shell(1, bound):
        i = g1.first_factor()
        shift = wg.act(g1, wg.basepoint()).direction
        for key in keys:
            if key[1][0] == str(i):
                # g1 may relabel the leading representative inside the same
                # block; orthogonality is only claimed across the induction.
                continue
            vec = SparseVec({key: 1})
            img = wg.act(g1, AffinePt(wg.chart, vec)).direction.sub(shift)
            same_block = img.restrict(
                lambda k2, key=key: k2[0] == "T" and k2[1] == key[1]
            )
            if same_block:
                return _result(
                    "block-orthogonality",
                    False,
                    f"{spec.render(g1)} keeps a component on block omega={key[1]}",
                )
    return _result("block-orthogonality", True)


def suite_axioms(parsed: ParsedSpec, triples: int = 200) -> List[CheckResult]:
    """Composition law and inverse-symmetry of displacement, random probes."""
    rng = random.Random(SEED)
    if parsed.kind == "amalgam":
        spec = parsed.amalgam
        rep = assembled_rep(parsed.rep_input)
        bound = parsed.bounds["exponent_bound"]
        pool = list(spec.ball(2, min(bound, 2)))
        mul = spec.multiply
        inv = spec.invert
        render = spec.render
    else:
        spec = parsed.bs.hnn()
        window = bswindow.WindowSpec(parsed.bs, parsed.bounds["window"])
        rep = bswindow.window_rep(parsed.bs)
        shells = bswindow.window_shells(window, 2)
        pool = [g for shell in shells for g in shell]
        mul = spec.multiply
        inv = spec.invert
        render = spec.render
    x0 = rep.basepoint()
    pts = [x0]
    for g in pool[: min(6, len(pool))]:
        pts.append(rep.act(g, x0))
    for trial in range(triples):
        g1 = rng.choice(pool)
        g2 = rng.choice(pool)
        x = rng.choice(pts)
        lhs = rep.act(mul(g1, g2), x)
        rhs = rep.act(g1, rep.act(g2, x))
        if lhs != rhs:
            return [
                _result(
                    "cocycle",
                    False,
                    f"act({render(g1)}*{render(g2)}) != act∘act (trial {trial})",
                )
            ]
        d = displacement_sq(rep, g1)
        dinv = displacement_sq(rep, inv(g1))
        if d != dinv:
            return [
                _result(
                    "inverse-displacement",
                    False,
                    f"{render(g1)}: {d} vs inverse {dinv}",
                )
            ]
    return [_result("cocycle", True), _result("inverse-displacement", True)]


def suite_gluing(parsed: ParsedSpec) -> List[CheckResult]:
    """Window edges glue: both embedded edge-group actions agree."""
    if parsed.kind != "hnn":
        return [_result("gluing", False, "gluing suite needs an hnn spec")]
    try:
        window, inputs = bswindow.build_window(parsed.bs, parsed.bounds["window"])
    except ConstructionError as exc:
        return [_result("gluing", False, str(exc))]
    # Construction already validated agreement; re-probe shift values.
    for k, inp in zip(range(-window.half_width, window.half_width), inputs):
        h = (1,)
        lo = inp.rep1.map_for(inp.spec.embed1.apply(h)).shift
        hi = inp.rep2.map_for(inp.spec.embed2.apply(h)).shift
        if lo != hi:
            return [
                _result(
                    "gluing", False, f"edge ({k},{k+1}): {lo.serialize()} != {hi.serialize()}"
                )
            ]
    return [_result("gluing", True)]


SUITES = {
    "ut-distance": suite_ut_distance,
    "h-agreement": suite_h_agreement,
    "tower-projection": suite_tower_projection,
    "axioms": suite_axioms,
    "gluing": suite_gluing,
}

AMALGAM_SUITES = ("ut-distance", "h-agreement", "tower-projection", "axioms")
HNN_SUITES = ("axioms", "gluing")


def run_suite(parsed: ParsedSpec, name: str) -> List[CheckResult]:
    if name == "all":
        names = AMALGAM_SUITES if parsed.kind == "amalgam" else HNN_SUITES
        out = []
        for n in names:
            out.extend(SUITES[n](parsed))
        return out
    if name not in SUITES:
        raise ConstructionError(f"unknown suite {name!r}; have {sorted(SUITES)} + all")
    if parsed.kind == "hnn" and name not in HNN_SUITES:
        raise ConstructionError(f"suite {name!r} needs an amalgam spec")
    if parsed.kind == "amalgam" and name not in AMALGAM_SUITES:
        raise ConstructionError(f"suite {name!r} needs an hnn spec")
    return SUITES[name](parsed)

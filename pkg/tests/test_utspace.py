import itertools
import random

from fractions import Fraction

import pytest

from treeaction.errors import ChartMismatchError
from treeaction.tree import TreeAction, TreeBall, base_vertex, tree_distance
from treeaction.utspace import UTRep


def test_basepoint_anchor(sl2z):
    ut = UTRep(sl2z.amalgam)
    assert ut.delta(base_vertex(1)) == ut.basepoint()
    mid = UTRep(sl2z.amalgam, midpoint=True)
    # the midpoint basepoint sits half an edge from both base vertices
    assert mid.delta(base_vertex(1)).sub(mid.basepoint()).norm_sq() == Fraction(
        1, 4
    )
    assert mid.delta(base_vertex(2)).sub(mid.basepoint()).norm_sq() == Fraction(
        1, 4
    )


def test_delta_antisymmetry(sl2z):
    ut = UTRep(sl2z.amalgam)
    ball = TreeBall(sl2z.amalgam, 3, 0)
    vs = sorted(ball.vertices, key=repr)[:10]
    for v, w in itertools.combinations(vs, 2):
        assert ut.delta(v).sub(ut.delta(w)) == ut.delta(w).sub(
            ut.delta(v)
        ).scale(-1)


def test_distance_law(sl2z, torus23):
    for parsed, radius, bound in ((sl2z, 4, 0), (torus23, 3, 2)):
        spec = parsed.amalgam
        ut = UTRep(spec)
        ball = TreeBall(spec, radius, bound)
        vs = sorted(ball.vertices, key=repr)
        for v, w in itertools.combinations(vs[:16], 2):
            got = ut.delta(v).sub(ut.delta(w)).norm_sq()
            assert got == tree_distance(v, w)


def test_equivariance(sl2z):
    spec = sl2z.amalgam
    ut = UTRep(spec)
    action = TreeAction(spec)
    ball = TreeBall(spec, 3, 0)
    vs = sorted(ball.vertices, key=repr)
    rng = random.Random(7)
    for _ in range(60):
        g = rng.choice(list(spec.ball(2, 0)))
        v = rng.choice(vs)
        assert ut.act(g, ut.delta(v)) == ut.delta(action.on_vertex(g, v))


def test_cocycle(torus23):
    spec = torus23.amalgam
    ut = UTRep(spec, midpoint=True)
    pool = list(spec.ball(2, 1))
    rng = random.Random(11)
    x0 = ut.basepoint()
    pts = [x0] + [ut.act(g, x0) for g in pool[:5]]
    for _ in range(100):
        g1, g2 = rng.choice(pool), rng.choice(pool)
        x = rng.choice(pts)
        assert ut.act(spec.multiply(g1, g2), x) == ut.act(g1, ut.act(g2, x))


def test_displacement_is_tree_displacement(sl2z):
    spec = sl2z.amalgam
    ut = UTRep(spec)
    action = TreeAction(spec)
    root = base_vertex(1)
    for g in spec.ball(3, 0):
        want = tree_distance(root, action.on_vertex(g, root))
        assert ut.displacement_sq(g) == want


def test_chart_guard(sl2z, torus23):
    ut1 = UTRep(sl2z.amalgam)
    ut2 = UTRep(torus23.amalgam)
    with pytest.raises(ChartMismatchError):
        ut1.act(next(sl2z.amalgam.ball(1, 0)), ut2.basepoint())

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treeaction.errors import ChartMismatchError
from treeaction.linalg import (
    ONE,
    ZERO,
    AffinePt,
    SparseVec,
    gram_schmidt_unnormalized,
    project_onto_span,
)

fracs = st.fractions(
    min_value=-5, max_value=5, max_denominator=6
)
keys = st.integers(0, 5)
vecs = st.dictionaries(keys, fracs, max_size=5).map(SparseVec)


def test_construction_drops_zeros():
    v = SparseVec({0: Fraction(0), 1: Fraction(2)})
    assert list(v.keys()) == [1]
    assert not SparseVec({})
    assert SparseVec({0: 1})


def test_basic_algebra():
    v = SparseVec({0: 1, 1: 2})
    w = SparseVec({1: -2, 2: 3})
    assert v.add(w) == SparseVec({0: 1, 2: 3})
    assert v.sub(v) == ZERO
    assert v.scale(Fraction(1, 2)) == SparseVec({0: Fraction(1, 2), 1: 1})
    assert v.dot(w) == -4
    assert v.norm_sq() == 5


@given(vecs, vecs)
def test_parallelogram_law(v, w):
    lhs = v.add(w).norm_sq() + v.sub(w).norm_sq()
    assert lhs == 2 * v.norm_sq() + 2 * w.norm_sq()


@given(vecs, vecs, vecs, fracs)
def test_dot_bilinear(u, v, w, c):
    assert u.add(v.scale(c)).dot(w) == u.dot(w) + c * v.dot(w)
    assert w.dot(u) == u.dot(w)


def test_weighted_norm():
    weight = lambda k: Fraction(k + 1)
    v = SparseVec({0: 2, 1: 3})
    assert v.norm_sq(weight) == 4 + 2 * 9
    assert v.dot(v, weight) == v.norm_sq(weight)


def test_map_keys_and_restrict():
    v = SparseVec({0: 1, 1: 2, 2: 3})
    assert v.map_keys(lambda k: k + 10) == SparseVec({10: 1, 11: 2, 12: 3})
    assert v.restrict(lambda k: k % 2 == 0) == SparseVec({0: 1, 2: 3})


def test_serialize_deterministic():
    v = SparseVec({("b", 2): Fraction(1, 3), ("a", 1): -2})
    assert v.serialize() == SparseVec(dict(reversed(list(v.items())))).serialize()
    assert "1/3" in v.serialize()


def test_gram_schmidt():
    vs = [
        SparseVec({0: 1, 1: 1}),
        SparseVec({0: 1}),
        SparseVec({0: 2, 1: 2}),  # dependent, dropped
    ]
    basis = gram_schmidt_unnormalized(vs, lambda k: ONE)
    assert len(basis) == 2
    assert basis[0].dot(basis[1]) == 0
    # the span is preserved: each input projects onto the basis exactly
    for v in vs:
        assert project_onto_span(v, basis, lambda k: ONE) == v


def test_projection_residual_orthogonal():
    basis = gram_schmidt_unnormalized(
        [SparseVec({0: 1, 1: 2})], lambda k: ONE
    )
    v = SparseVec({0: 3, 2: 1})
    p = project_onto_span(v, basis, lambda k: ONE)
    assert v.sub(p).dot(basis[0]) == 0


def test_affine_points():
    x = AffinePt("c", SparseVec({0: 1}))
    y = AffinePt("c", SparseVec({0: 3}))
    assert x.sub(y) == SparseVec({0: -2})
    assert y.translate(SparseVec({0: -2})) == x
    with pytest.raises(ChartMismatchError):
        x.sub(AffinePt("other", ZERO))

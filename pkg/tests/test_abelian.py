import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treeaction.abelian import AbelianGroup, DiagonalEmbedding
from treeaction.errors import ConstructionError, SpecParseError

Z = AbelianGroup(1, (), ("a",))
Z2 = AbelianGroup(2, (), ("x", "y"))
Z4 = AbelianGroup(0, (4,), ("r",))
Z6 = AbelianGroup(0, (6,), ("s",))
Z2T = AbelianGroup(0, (2,), ("h",))
MIXED = AbelianGroup(1, (3,), ("u", "v"))


def test_group_basics():
    assert Z2.identity == (0, 0)
    assert Z4.reduce((7,)) == (3,)
    assert MIXED.reduce((-2, 5)) == (-2, 2)
    assert Z2.add((1, 2), (3, -5)) == (4, -3)
    assert Z4.neg((1,)) == (3,)
    assert Z6.scale(4, (2,)) == (2,)
    assert Z4.order() == 4
    assert Z2T.order() == 2
    with pytest.raises(ConstructionError):
        Z.order()


def test_element_orders():
    assert Z4.element_order((1,)) == 4
    assert Z4.element_order((2,)) == 2
    assert Z6.element_order((4,)) == 3
    assert Z.element_order((3,)) == 0
    assert Z.element_order((0,)) == 1


def test_elements_enumeration():
    assert sorted(Z.elements(2)) == [(-2,), (-1,), (0,), (1,), (2,)]
    assert len(list(Z6.elements(0))) == 6
    assert len(list(MIXED.elements(1))) == 9


def test_render():
    assert Z2.render((0, 0)) == "e"
    assert Z2.render((1, -2)) == "x*y^-2"
    assert Z4.render((5,)) == "r"


def test_validation():
    with pytest.raises(SpecParseError):
        AbelianGroup(0, (1,), ("x",))
    with pytest.raises(SpecParseError):
        AbelianGroup(1, (), ("x", "y"))
    with pytest.raises(SpecParseError):
        AbelianGroup(2, (), ("x", "x"))


# -- embeddings ---------------------------------------------------------------

EMB_Z2_Z4 = DiagonalEmbedding(Z2T, Z4, ((0, 0, 2),))
EMB_Z2_Z6 = DiagonalEmbedding(Z2T, Z6, ((0, 0, 3),))
EMB_AXIS = DiagonalEmbedding(Z, Z2, ((0, 0, 1),))
EMB_X2 = DiagonalEmbedding(Z, Z, ((0, 0, 2),))


def test_embedding_apply_and_index():
    assert EMB_Z2_Z4.apply((1,)) == (2,)
    assert EMB_Z2_Z4.index() == 2
    assert EMB_Z2_Z6.index() == 3
    assert EMB_X2.index() == 2
    assert EMB_AXIS.index() is None  # unhit free coordinate


def test_transversal_identity_first():
    assert EMB_Z2_Z6.transversal() == ((0,), (1,), (2,))
    assert EMB_X2.transversal() == ((0,), (1,))
    reps = EMB_AXIS.transversal(2)
    assert reps[0] == (0, 0)
    assert len(reps) == 5
    assert all(r[0] == 0 for r in reps)


def test_decompose_torsion_oracle():
    # 4 in Z/6 over the index-3 image {0,3}: 4 = 1 + 3*1
    rep, h = EMB_Z2_Z6.decompose((4,))
    assert rep == (1,)
    assert h == (1,)


def test_decompose_free_oracle():
    # (3,5) in Z^2 over the first axis: rep keeps the unhit coordinate
    rep, h = EMB_AXIS.decompose((3, 5))
    assert rep == (0, 5)
    assert h == (3,)


def test_decompose_is_a_bijection_finite():
    # every target element decomposes uniquely over a finite transversal
    seen = set()
    for g in Z6.elements(0):
        rep, h = EMB_Z2_Z6.decompose(g)
        assert rep in EMB_Z2_Z6.transversal()
        assert Z6.add(rep, EMB_Z2_Z6.apply(h)) == g
        seen.add((rep, h))
    assert len(seen) == 6


@given(st.integers(-50, 50))
def test_decompose_reconstructs_free(c):
    rep, h = EMB_X2.decompose((c,))
    assert rep in EMB_X2.transversal()
    assert Z.add(rep, EMB_X2.apply(h)) == (c,)


def test_preimage():
    assert EMB_X2.preimage((6,)) == (3,)
    with pytest.raises(ConstructionError):
        EMB_X2.preimage((3,))


def test_invalid_embeddings():
    with pytest.raises(SpecParseError):
        DiagonalEmbedding(Z, Z, ((0, 0, 0),))  # zero multiplier
    with pytest.raises(SpecParseError):
        DiagonalEmbedding(Z2T, Z4, ((0, 0, 1),))  # not injective on Z/2
    with pytest.raises(SpecParseError):
        DiagonalEmbedding(Z2T, Z, ((0, 0, 1),))  # torsion into free
    with pytest.raises(SpecParseError):
        DiagonalEmbedding(Z2, Z2, ((0, 0, 1),))  # unmapped source coordinate
    with pytest.raises(SpecParseError):
        DiagonalEmbedding(Z2, Z2, ((0, 0, 1), (1, 0, 1)))  # duplicate target


def test_embedding_is_homomorphism():
    for a, b in itertools.product(Z2T.elements(0), repeat=2):
        lhs = EMB_Z2_Z6.apply(Z2T.add(a, b))
        rhs = Z6.add(EMB_Z2_Z6.apply(a), EMB_Z2_Z6.apply(b))
        assert lhs == rhs

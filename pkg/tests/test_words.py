import pytest
from hypothesis import given
from hypothesis import strategies as st

from treeaction.errors import WordSyntaxError
from treeaction.words import parse_word, render_word


def test_identity_word():
    assert parse_word("e") == []
    assert parse_word("  e  ") == []
    assert render_word([]) == "e"


def test_basic_terms():
    assert parse_word("x") == [("x", 1)]
    assert parse_word("x^3") == [("x", 3)]
    assert parse_word("x^-2*y") == [("x", -2), ("y", 1)]
    assert parse_word("a_1 * b2 ^ 0") == [("a_1", 1), ("b2", 0)]


def test_error_positions():
    with pytest.raises(WordSyntaxError) as exc:
        parse_word("x**y")
    assert exc.value.position == 2
    with pytest.raises(WordSyntaxError):
        parse_word("x*")
    with pytest.raises(WordSyntaxError):
        parse_word("^2")
    with pytest.raises(WordSyntaxError):
        parse_word("")
    with pytest.raises(WordSyntaxError):
        parse_word("2x")


names = st.from_regex(r"[a-z_][a-z_0-9]{0,3}", fullmatch=True).filter(
    lambda s: s != "e"
)
tokens = st.lists(
    st.tuples(names, st.integers(-9, 9)), min_size=0, max_size=6
)


@given(tokens)
def test_render_parse_roundtrip(toks):
    # render drops exponent-0 terms, so normalize the expectation the same way
    kept = [t for t in toks if t[1] != 0]
    assert parse_word(render_word(kept)) == kept or kept == []
    if not kept:
        assert parse_word(render_word(toks)) == []

import pytest

from treeaction.errors import SpecParseError
from treeaction.specfile import DEFAULT_BOUNDS, parse_spec_text

from tests.conftest import spec_path


MINIMAL_AMALGAM = """
[group]
kind = amalgam
name = demo
factor1 = Z gens x
factor2 = Z gens y
edge = Z gens h
embed1 = h:x*2
embed2 = h:y*3

[rep]
dimW = 1
dim1 = 1
dim2 = 1
act1 x = translate 3
act2 y = translate 2
"""

MINIMAL_HNN = """
[group]
kind = hnn
name = demo
m = 1
n = 2
"""


def test_parse_shipped_specs(sl2z, torus23, z2z2, bs12, bs23):
    assert sl2z.kind == torus23.kind == z2z2.kind == "amalgam"
    assert bs12.kind == bs23.kind == "hnn"
    assert bs12.bs.m == 1 and bs12.bs.n == 2
    assert z2z2.rep_input.dim_w == 1
    assert sl2z.bounds["radius"] == 5


def test_minimal_amalgam_defaults():
    parsed = parse_spec_text(MINIMAL_AMALGAM)
    assert parsed.bounds == DEFAULT_BOUNDS
    assert parsed.amalgam.name == "demo"
    assert parsed.rep_input is not None


def test_minimal_hnn():
    parsed = parse_spec_text(MINIMAL_HNN)
    assert parsed.bs.phi == 2
    assert parsed.amalgam is None


def test_comments_and_blank_lines():
    text = "# leading comment\n" + MINIMAL_HNN + "\n# trailing\n\n"
    assert parse_spec_text(text).kind == "hnn"


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("[group]", "[grp]"),
        lambda t: t + "\n[bogus]\nx = 1\n",
        lambda t: t + "\n[bounds]\nradius = 2\nradius = 3\n",
        lambda t: t.replace("kind = hnn", "kind = banana"),
        lambda t: t.replace("m = 1", "m = one"),
        lambda t: t.replace("m = 1", ""),
        lambda t: t + "\n[rep]\ndimW = 1\n",  # reps are an amalgam feature
    ],
    ids=[
        "unknown-section",
        "bogus-section",
        "duplicate-key",
        "bad-kind",
        "non-integer",
        "missing-m",
        "rep-on-hnn",
    ],
)
def test_rejections_hnn(mutate):
    with pytest.raises(SpecParseError):
        parse_spec_text(mutate(MINIMAL_HNN))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("Z gens x", "Z gens x y"),
        lambda t: t.replace("h:x*2", "h:x*0"),
        lambda t: t.replace("h:x*2", "q:x*2"),
        lambda t: t.replace("translate 3", "translate 3,4"),
        lambda t: t.replace("factor2 = Z gens y", "factor2 = Z gens x"),
        lambda t: t.replace("dimW = 1", "dimW = -1"),
    ],
    ids=[
        "gens-arity",
        "zero-mult",
        "unknown-edge-gen",
        "vector-arity",
        "name-clash",
        "negative-dim",
    ],
)
def test_rejections_amalgam(mutate):
    with pytest.raises(SpecParseError):
        parse_spec_text(mutate(MINIMAL_AMALGAM))


def test_missing_file():
    with pytest.raises(SpecParseError):
        from treeaction.specfile import parse_spec_file

        parse_spec_file("/nonexistent/nowhere.spec")


def test_linear_part_parsing():
    text = MINIMAL_AMALGAM.replace(
        "act1 x = translate 3",
        "act1 x = linear 1 translate 3",
    )
    parsed = parse_spec_text(text)
    assert parsed.rep_input.rep1.gen_maps[0].shift

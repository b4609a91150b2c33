import pathlib

import pytest

from treeaction.specfile import parse_spec_file

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "treeaction" / "data"


def spec_path(name: str) -> str:
    return str(DATA / f"{name}.spec")


@pytest.fixture(scope="session")
def sl2z():
    return parse_spec_file(spec_path("sl2z"))


@pytest.fixture(scope="session")
def torus23():
    return parse_spec_file(spec_path("torus23"))


@pytest.fixture(scope="session")
def z2z2():
    return parse_spec_file(spec_path("z2z2"))


@pytest.fixture(scope="session")
def bs12():
    return parse_spec_file(spec_path("bs12"))


@pytest.fixture(scope="session")
def bs23():
    return parse_spec_file(spec_path("bs23"))

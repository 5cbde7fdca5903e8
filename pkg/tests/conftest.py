import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from ms2dist.structures import SecondaryStructure, parse_dot_bracket, read_structure_pair  # noqa: E402

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")


def load(name):
    return read_structure_pair((DATA / f"{name}.txt").read_text())


@pytest.fixture
def bistable():
    return load("bistable")


@pytest.fixture
def collosoma():
    return load("collosoma")


@pytest.fixture
def toy20():
    return load("toy20")


@pytest.fixture
def toy_pairs():
    s = SecondaryStructure.from_pairs([(1, 5), (10, 15), (20, 25)], 25)
    t = SecondaryStructure.from_pairs([(5, 10), (15, 20)], 25)
    return s, t


def case_a(a1=1, a2=6, a3=11, a4=16, n=16):
    """t pairs sit side by side, s pairs nest across them."""
    s = SecondaryStructure.from_pairs([(a1, a4), (a2, a3)], n)
    t = SecondaryStructure.from_pairs([(a1, a2), (a3, a4)], n)
    return s, t


def case_b(**kw):
    s, t = case_a(**kw)
    return t, s


__all__ = ["DATA", "load", "case_a", "case_b", "parse_dot_bracket"]

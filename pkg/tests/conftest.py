import os
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from thompson.dyadic import CircleInterval, Dyadic, IntervalSet  # noqa: E402
from thompson.elements import TElement, VElement  # noqa: E402
from thompson.trees import BinaryTree  # noqa: E402

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@st.composite
def tree_bits(draw, n):
    if n == 0:
        return "0"
    k = draw(st.integers(0, n - 1))
    return "1" + draw(tree_bits(k)) + draw(tree_bits(n - 1 - k))


@st.composite
def trees(draw, min_size=0, max_size=8):
    n = draw(st.integers(min_size, max_size))
    return BinaryTree(draw(tree_bits(n)))


@st.composite
def t_elements(draw, min_size=0, max_size=8):
    n = draw(st.integers(min_size, max_size))
    s = BinaryTree(draw(tree_bits(n)))
    t = BinaryTree(draw(tree_bits(n)))
    return TElement(s, t, draw(st.integers(0, n)))


@st.composite
def v_elements(draw, min_size=0, max_size=8):
    n = draw(st.integers(min_size, max_size))
    s = BinaryTree(draw(tree_bits(n)))
    t = BinaryTree(draw(tree_bits(n)))
    perm = draw(st.permutations(range(n + 1)))
    return VElement(s, t, tuple(perm))


def elements(min_size=0, max_size=8):
    return st.one_of(t_elements(min_size, max_size), v_elements(min_size, max_size))


dyadics = st.builds(Dyadic, st.integers(-2 ** 40, 2 ** 40), st.integers(0, 40))


@st.composite
def unit_dyadics(draw, max_exp=10):
    e = draw(st.integers(0, max_exp))
    return Dyadic(draw(st.integers(0, 2 ** e - 1)), e)


@st.composite
def arcs(draw, max_exp=6):
    e = draw(st.integers(0, max_exp))
    lo = draw(st.integers(0, 2 ** e - 1))
    length = draw(st.integers(1, 2 ** e))
    return CircleInterval(Dyadic(lo, e), Dyadic(length, e))


interval_sets = st.lists(arcs(), max_size=5).map(IntervalSet.from_arcs)

rationals = st.builds(Fraction, st.integers(0, 10 ** 6), st.integers(10 ** 6 + 1, 2 * 10 ** 6))


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

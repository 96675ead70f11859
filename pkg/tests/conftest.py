"""Shared small instances and hypothesis strategies."""

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import strategies as st

from rankfpt import BetweennessInstance, Ranking, WeightedTournament
from rankfpt.kra import VoteProfile


def chain(n: int) -> WeightedTournament:
    return WeightedTournament.chain(n)


def three_cycle() -> WeightedTournament:
    # a -> b -> c -> a
    return WeightedTournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)], ["a", "b", "c"])


def cycle_plus_sink() -> WeightedTournament:
    # the 3-cycle plus d, which loses to a, b and c
    arcs = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    return WeightedTournament.from_arcs(4, arcs, ["a", "b", "c", "d"])


def all_half(n: int) -> WeightedTournament:
    w = np.ones((n, n), dtype=np.int64)
    return WeightedTournament(w, 2)


def profile_p1() -> VoteProfile:
    return VoteProfile("abc", [list("abc"), list("abc"), list("bac")])


def b0(n: int) -> BetweennessInstance:
    names = [chr(ord("a") + i) for i in range(n)]
    return BetweennessInstance.from_ranking(Ranking(range(n)), names)


def b1() -> BetweennessInstance:
    # B0(4) with the triple {a, b, c} redesignated to a
    return b0(4).with_middle((0, 1, 2), 0)


@pytest.fixture
def I3cyc():
    return three_cycle()


@pytest.fixture
def P1():
    return profile_p1()


@pytest.fixture
def B1():
    return b1()


# -- hypothesis strategies ------------------------------------------------

@st.composite
def tournaments(draw, min_n=2, max_n=9, denoms=(1, 2, 10)):
    n = draw(st.integers(min_n, max_n))
    D = draw(st.sampled_from(denoms))
    w = np.zeros((n, n), dtype=np.int64)
    for u, v in combinations(range(n), 2):
        x = draw(st.integers(0, D))
        w[u, v], w[v, u] = x, D - x
    return WeightedTournament(w, D)


@st.composite
def rankings_of(draw, n):
    return Ranking(draw(st.permutations(range(n))))


@st.composite
def betweenness_instances(draw, min_n=3, max_n=8):
    n = draw(st.integers(min_n, max_n))
    mids = {t: t[draw(st.integers(0, 2))] for t in combinations(range(n), 3)}
    return BetweennessInstance(n, mids)


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

"""Planted and random instance generators (deterministic per seed)."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

import numpy as np

from .core import Ranking, WeightedTournament

__all__ = ["fast_flips", "bt_flips", "random_tournament", "random_betweenness",
           "random_profile", "three_cycle"]


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _random_pair(rng, n: int) -> tuple[int, int]:
    i, j = rng.choice(n, size=2, replace=False)
    return (int(i), int(j)) if i < j else (int(j), int(i))


def fast_flips(n: int, k: int, seed=0) -> WeightedTournament:
    """Chain ``v1 -> v2 -> ... -> vn`` with ``k`` uniformly random pair flips."""
    rng = _rng(seed)
    w = np.triu(np.ones((n, n), dtype=np.int64), 1)
    for _ in range(k if n >= 2 else 0):
        i, j = _random_pair(rng, n)
        w[i, j], w[j, i] = w[j, i], w[i, j]
    return WeightedTournament(w, 1)


def bt_flips(n: int, k: int, seed=0):
    """Chain-induced middles with ``k`` random triples redesignated."""
    from .betweenness import BetweennessInstance

    rng = _rng(seed)
    B = BetweennessInstance.from_ranking(Ranking(range(n)))
    mids = dict(B.middles())
    triples = list(mids)
    for _ in range(k if n >= 3 else 0):
        t = triples[int(rng.integers(len(triples)))]
        others = [x for x in t if x != mids[t]]
        mids[t] = others[int(rng.integers(2))]
    return BetweennessInstance(n, mids, B.names)


def three_cycle(names: Sequence[str] = ("a", "b", "c")) -> WeightedTournament:
    return WeightedTournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)], names)


def random_tournament(n: int, denom: int = 1, seed=0) -> WeightedTournament:
    """Every ``w[u][v]`` (u < v) uniform on ``0..denom``."""
    rng = _rng(seed)
    w = np.zeros((n, n), dtype=np.int64)
    for u, v in combinations(range(n), 2):
        x = int(rng.integers(denom + 1))
        w[u, v] = x
        w[v, u] = denom - x
    return WeightedTournament(w, denom)


def random_betweenness(n: int, seed=0):
    """Uniformly random designated middle for every triple."""
    from .betweenness import BetweennessInstance

    rng = _rng(seed)
    mids = {t: t[int(rng.integers(3))] for t in combinations(range(n), 3)}
    return BetweennessInstance(n, mids)


def random_profile(m_candidates: int, voters: int, seed=0):
    """``voters`` uniformly random total orders over the candidates."""
    from .kra import VoteProfile

    rng = _rng(seed)
    names = [chr(ord("a") + i) if m_candidates <= 26 else f"c{i}"
             for i in range(m_candidates)]
    votes = [[names[i] for i in rng.permutation(m_candidates)] for _ in range(voters)]
    return VoteProfile(names, votes)

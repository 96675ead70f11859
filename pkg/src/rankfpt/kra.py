"""Kemeny rank aggregation through the weighted FAST reduction.

With ``m`` votes, ``w[u][v] = #{votes ranking u before v}`` over ``D = m``
makes the FAST cost of any ranking equal to its summed Kendall-Tau distance
to the votes, so the FAST optimum is the Kemeny optimum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .band import SolveReport
from .core import InstanceError, Ranking, WeightedTournament, kendall_tau
from .fast import solve_fast

__all__ = ["VoteProfile", "reduce_to_fast", "avg_kt", "aggregate"]


class VoteProfile:
    """Complete strict votes over a fixed candidate list.

    Votes are given as sequences of candidate names, most preferred first.
    Ties and missing or unknown candidates are rejected.
    """

    def __init__(self, candidates: Sequence[str], votes: Sequence[Sequence[str]]):
        candidates = tuple(str(c) for c in candidates)
        if len(set(candidates)) != len(candidates):
            raise InstanceError("duplicate candidate names")
        if not votes:
            raise InstanceError("a profile needs at least one vote")
        index = {c: i for i, c in enumerate(candidates)}
        rankings = []
        for k, vote in enumerate(votes):
            ids = []
            for name in vote:
                if name not in index:
                    raise InstanceError(f"vote {k + 1}: unknown candidate {name!r}")
                ids.append(index[name])
            if len(ids) != len(candidates) or len(set(ids)) != len(ids):
                raise InstanceError(
                    f"vote {k + 1} is not a strict ranking of all {len(candidates)} candidates")
            rankings.append(Ranking(ids))
        self.candidates = candidates
        self.votes = tuple(rankings)

    @property
    def m(self) -> int:
        return len(self.votes)

    def index(self, name: str) -> int:
        try:
            return self.candidates.index(name)
        except ValueError:
            raise InstanceError(f"unknown candidate {name!r}") from None

    def ranking(self, names: Sequence[str]) -> Ranking:
        return Ranking(self.index(s) for s in names)

    def relabel(self, perm: Sequence[int]) -> "VoteProfile":
        """Profile with candidate ``i`` renamed to ``candidates[perm[i]]``."""
        new = [self.candidates[perm[i]] for i in range(len(perm))]
        return VoteProfile(self.candidates, [[new[v] for v in r.order] for r in self.votes])

    def __repr__(self):
        return f"VoteProfile({len(self.candidates)} candidates, {self.m} votes)"


def reduce_to_fast(P: VoteProfile) -> WeightedTournament:
    n = len(P.candidates)
    w = np.zeros((n, n), dtype=np.int64)
    for vote in P.votes:
        o = np.asarray(vote.order, dtype=np.intp)
        # o[i] before o[j] for i < j
        w[np.ix_(o, o)] += np.triu(np.ones((n, n), dtype=np.int64), 1)
    return WeightedTournament(w, P.m, P.candidates)


def avg_kt(P: VoteProfile, pi: Ranking) -> int:
    """Summed Kendall-Tau distance to the votes (the average times ``m``)."""
    return sum(kendall_tau(pi, vote) for vote in P.votes)


def average(P: VoteProfile, pi: Ranking) -> Fraction:
    return Fraction(avg_kt(P, pi), P.m)


def aggregate(P: VoteProfile, **options) -> SolveReport:
    """Kemeny-optimal ranking; ``cost`` is the summed distance over ``denom = m``."""
    return solve_fast(reduce_to_fast(P), **options)

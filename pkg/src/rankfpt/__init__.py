"""Exact fixed-parameter solvers for ranking problems.

Weighted feedback arc set on tournaments, Kemeny rank aggregation and
betweenness on tournaments, each solved by a banded search around a seed
ranking, with brute-force oracles for checking.
"""

from .band import Band, SolveReport
from .betweenness import (BetweennessInstance, BtRadiusParams, CandidateSet, banded_dp_bt,
                          bt_b, bt_cost, candidate_rankings, compute_radii_bt,
                          solve_betweenness)
from .core import (BandTooWide, InstanceError, Ordering, Ranking, WeightedTournament,
                   fast_b, fast_cost, kendall_tau, validate)
from .fast import (approx_ranking, banded_divide_conquer, banded_dp, compute_radii,
                   solve_fast)
from .kernel import KernelResult, MajorityTournament, kernelize, majority, triangles_through
from .kra import VoteProfile, aggregate, avg_kt, reduce_to_fast
from .oracle import oracle_bt_perm, oracle_fast_perm, oracle_fast_subset

__all__ = [
    "Band", "SolveReport", "BetweennessInstance", "BtRadiusParams", "CandidateSet",
    "banded_dp_bt", "bt_b", "bt_cost", "candidate_rankings", "compute_radii_bt",
    "solve_betweenness", "BandTooWide", "InstanceError", "Ordering", "Ranking",
    "WeightedTournament", "fast_b", "fast_cost", "kendall_tau", "validate",
    "approx_ranking", "banded_divide_conquer", "banded_dp", "compute_radii",
    "solve_fast", "KernelResult", "MajorityTournament", "kernelize", "majority",
    "triangles_through", "VoteProfile", "aggregate", "avg_kt", "reduce_to_fast",
    "oracle_bt_perm", "oracle_fast_perm", "oracle_fast_subset",
]

__version__ = "0.1.0"

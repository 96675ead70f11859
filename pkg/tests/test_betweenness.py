import math
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import b0, b1, betweenness_instances, rankings_of
from rankfpt import (Band, BandTooWide, BetweennessInstance, InstanceError, Ordering,
                     Ranking, banded_dp_bt, bt_b, bt_cost, candidate_rankings,
                     compute_radii_bt, kendall_tau, oracle_bt_perm, solve_betweenness)
from rankfpt.betweenness import BtRadiusParams, CandidateSet, insertion_costs
from rankfpt.generators import bt_flips, random_betweenness


def brute_cost(B, pi):
    return sum(1 for t in combinations(pi.order, 3) if B.middle(*t) != t[1])


class TestInstance:
    def test_missing_triple(self):
        with pytest.raises(InstanceError, match="missing triple"):
            BetweennessInstance(4, {(0, 1, 2): 1})

    def test_middle_must_belong(self):
        with pytest.raises(InstanceError):
            BetweennessInstance(3, {(0, 1, 2): 5})

    def test_with_middle(self):
        B = b1()
        assert B.middle(2, 0, 1) == 0
        assert B.middle(0, 1, 3) == 1


class TestCost:
    def test_examples(self):
        B = b0(4)
        assert bt_cost(B, Ranking(range(4))) == 0
        assert bt_cost(B, Ranking(range(4)).reverse()) == 0
        assert bt_cost(b1(), Ranking((1, 0, 2, 3))) == 1

    @settings(max_examples=100, deadline=None)
    @given(betweenness_instances(), st.data())
    def test_matches_definition_and_reversal(self, B, data):
        pi = data.draw(rankings_of(B.n))
        assert bt_cost(B, pi) == brute_cost(B, pi) == bt_cost(B, pi.reverse())


class TestLocalCost:
    def test_examples(self):
        B = b0(4)
        sigma = Ordering({0: 1, 2: 3, 3: 4})
        assert bt_b(B, sigma, 1, 2) == 0
        assert bt_b(B, sigma, 1, Fraction(9, 2)) == 3
        assert bt_b(B, Ordering({0: 1}), 2, 5) == 0

    def test_collision(self):
        with pytest.raises(InstanceError):
            bt_b(b0(4), Ordering({0: 1, 2: 3}), 1, 3)

    @settings(max_examples=100, deadline=None)
    @given(betweenness_instances(), st.data())
    def test_insertion_costs_match_brute_force(self, B, data):
        v = data.draw(st.integers(0, B.n - 1))
        others = data.draw(st.permutations([u for u in range(B.n) if u != v]))
        costs = insertion_costs(B, others, v)
        for g in range(len(others) + 1):
            order = list(others[:g]) + [v] + list(others[g:])
            brute = sum(1 for t in combinations(order, 3)
                        if v in t and B.middle(*t) != t[1])
            assert costs[g] == brute


def test_local_cost_stable_under_reordering():
    rng = np.random.default_rng(21)
    for i in range(300):
        n = int(rng.integers(3, 21))
        B = random_betweenness(n, i)
        a, b = Ranking(rng.permutation(n)), Ranking(rng.permutation(n))
        v = int(rng.integers(n))
        p = Fraction(int(rng.integers(0, n + 1))) + Fraction(1, 2)
        diff = bt_b(B, a, v, p) - bt_b(B, b, v, p)
        assert diff * diff <= 9 * (n - 1) ** 2 * kendall_tau(a, b)


def test_fragility():
    rng = np.random.default_rng(22)
    for i in range(300):
        n = int(rng.integers(3, 21))
        B = random_betweenness(n, i)
        pi = Ranking(rng.permutation(n))
        v = int(rng.integers(n))
        others = [u for u in pi.order if u != v]
        g, h = (int(x) for x in rng.integers(0, n, size=2))
        costs = insertion_costs(B, others, v)
        between = abs(g - h)
        assert 2 * (costs[g] + costs[h]) >= (n - 2) * between


def test_prefix_determinism():
    # constraints with two vertices in a prefix and one outside do not
    # depend on how the outside vertices are ordered
    rng = np.random.default_rng(23)
    for i in range(100):
        n = int(rng.integers(3, 10))
        B = random_betweenness(n, i)
        pi = [int(x) for x in rng.permutation(n)]
        k = int(rng.integers(2, n))
        prefix, rest = pi[:k], pi[k:]

        def shared(order):
            pos = {u: j for j, u in enumerate(order)}
            total = 0
            for u, w in combinations(prefix, 2):
                for q in rest:
                    t = sorted((u, w, q), key=pos.get)
                    total += B.middle(*t) != t[1]
            return total

        base = shared(pi)
        for _ in range(5):
            assert shared(prefix + [int(x) for x in rng.permutation(rest)]) == base


class TestCandidates:
    def test_consistent_instance(self):
        cands = candidate_rankings(b0(5))
        assert min(cands.costs) == 0

    def test_b1(self):
        assert min(candidate_rankings(b1()).costs) == 1

    def test_single_triple(self):
        B = BetweennessInstance(3, {(0, 1, 2): 2})
        assert min(candidate_rankings(B).costs) == 0

    def test_deterministic_and_bounded(self):
        B = random_betweenness(9, 3)
        a, b = candidate_rankings(B, 5), candidate_rankings(B, 5)
        assert a.rankings == b.rankings
        assert 1 <= len(a) <= 8
        assert a.costs == sorted(a.costs)
        assert a.costs == [bt_cost(B, r) for r in a.rankings]


class TestRadii:
    def test_zero_cost_seed(self):
        assert compute_radii_bt(b0(6), Ranking(range(6)), BtRadiusParams()) == [0] * 6

    def test_b1(self):
        # ceil(4 * sqrt(1/4) + 4 * b / 4) = ceil(2 + b)
        radii = compute_radii_bt(b1(), Ranking(range(4)), BtRadiusParams(4, 4))
        assert radii[0] == 3

    def test_monotone_in_constants(self):
        rng = np.random.default_rng(4)
        for i in range(30):
            n = int(rng.integers(3, 15))
            B = random_betweenness(n, i)
            pi = Ranking(rng.permutation(n))
            p = BtRadiusParams(Fraction(int(rng.integers(1, 5))), Fraction(int(rng.integers(1, 5))))
            lo = compute_radii_bt(B, pi, p)
            hi = compute_radii_bt(B, pi, p.scaled(2))
            assert all(a <= b <= n for a, b in zip(lo, hi))


class TestBandedDP:
    def test_zero_band(self):
        ranking, cost, _ = banded_dp_bt(b0(4), Ranking(range(4)), [0] * 4)
        assert ranking == (0, 1, 2, 3) and cost == 0

    def test_b1_full_band(self):
        _, cost, _ = banded_dp_bt(b1(), Ranking(range(4)), [4] * 4)
        assert cost == 1

    def test_one_redesignation_full_band(self):
        B = b0(6).with_middle((1, 3, 4), 4)
        ranking, cost, _ = banded_dp_bt(B, Ranking(range(6)), [6] * 6)
        assert cost == oracle_bt_perm(B)[0] == bt_cost(B, ranking)

    @settings(max_examples=80, deadline=None)
    @given(betweenness_instances(max_n=7), st.data())
    def test_matches_restricted_brute_force(self, B, data):
        seed = data.draw(rankings_of(B.n))
        radii = data.draw(st.lists(st.integers(0, 3), min_size=B.n, max_size=B.n))
        band = Band(seed, radii)
        ranking, cost, _ = banded_dp_bt(B, seed, radii)
        # telescoping: the recurrence value is the cost of the ranking
        assert cost == bt_cost(B, ranking)
        assert band.contains(ranking)
        best = min(bt_cost(B, Ranking(p)) for p in permutations(range(B.n))
                   if band.contains(Ranking(p)))
        assert cost == best


class TestSolve:
    def test_consistent(self):
        rep = solve_betweenness(b0(10))
        assert rep.cost == 0 and rep.certified

    def test_b1(self):
        rep = solve_betweenness(b1())
        assert rep.cost == 1
        assert bt_cost(b1(), rep.ranking) == 1

    def test_random_n7_against_oracle(self):
        for i in range(15):
            B = random_betweenness(7, 500 + i)
            assert solve_betweenness(B).cost == oracle_bt_perm(B)[0]

    def test_guard_admits_within_twice_best(self):
        B = random_betweenness(8, 9)
        rep = solve_betweenness(B)
        assert rep.seed_cost <= 2 * rep.extra["good_cost"]

    def test_custom_provider(self):
        B = bt_flips(8, 4, 0)
        truth = Ranking(range(8))

        def provider(inst, seed):
            return CandidateSet([truth], [bt_cost(inst, truth)])

        rep = solve_betweenness(B, candidates=provider)
        assert rep.cost == oracle_bt_perm(B)[0]

    def test_escalation_cap(self):
        tiny = BtRadiusParams(Fraction(1, 100), Fraction(1, 100), 2, 1)
        with pytest.raises(BandTooWide):
            solve_betweenness(bt_flips(12, 30, 0), params=tiny)

    def test_without_escalation(self):
        rep = solve_betweenness(bt_flips(12, 10, 1), escalate=False)
        assert len(rep.extra["rounds"]) == 1
        assert rep.cost == bt_cost(bt_flips(12, 10, 1), rep.ranking)

    def test_psi_bound_fit(self):
        # band width grows like sqrt(C / n) with the constant implied by the radii
        p = BtRadiusParams()
        c = 2 * (float(p.alpha1) + math.sqrt(2) * float(p.alpha2)) + 3 / math.sqrt(2)
        for n, k, s in [(10, 5, 0), (20, 30, 1), (30, 80, 2), (25, 200, 0)]:
            rep = solve_betweenness(bt_flips(n, k, s), seed=s)
            bound = c * math.sqrt(rep.seed_cost / n) + 2
            assert rep.psi <= bound

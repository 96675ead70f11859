"""Exact betweenness on tournaments (one designated middle per triple).

The solver follows the same band idea as the FAST solver: a few seed
rankings, a radius per vertex, and an exact search over valid prefix sets.
The prefix recurrence accumulates, when ``v`` is appended to ``S``, the cost
of every constraint ``{u, v, q}`` with ``u`` already placed and ``q`` still
outside; constraints with two vertices inside a prefix are fixed by the
prefix alone.

Costs go through ``ordered_cost[u, v, w]``, the cost of the triple ranked
``u < v < w``, so other dense triple-ranking cost systems only need a
different table.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Mapping, Sequence

import numpy as np

from .band import DEFAULT_MAX_STATES, Band, SolveReport, best_first
from .core import BandTooWide, InstanceError, Ordering, Ranking

__all__ = ["BetweennessInstance", "CandidateSet", "BtRadiusParams", "bt_cost", "bt_b",
           "bt_vertex_costs", "candidate_rankings", "compute_radii_bt", "banded_dp_bt",
           "solve_betweenness", "insertion_costs"]


class BetweennessInstance:
    """A designated middle vertex for every unordered triple.

    ``middles`` maps each triple (any order, given once) to its middle.
    """

    __slots__ = ("n", "names", "mid", "ordered_cost")

    def __init__(self, n: int, middles: Mapping[tuple[int, int, int], int],
                 names: Sequence[str] | None = None):
        if names is None:
            names = [f"v{i + 1}" for i in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n or len(set(names)) != n:
            raise InstanceError("names must be n distinct strings")
        mid = np.full((n, n, n), -1, dtype=np.int16)
        seen = 0
        for t, m in middles.items():
            a, b, c = t
            if len({a, b, c}) != 3 or not all(0 <= x < n for x in t):
                raise InstanceError(f"bad triple {t}")
            if m not in t:
                raise InstanceError(f"middle {m} not in triple {t}")
            if mid[a, b, c] != -1:
                raise InstanceError(f"triple {tuple(sorted(t))} given twice")
            for p in permutations(t):
                mid[p] = m
            seen += 1
        if seen != math.comb(n, 3):
            missing = [t for t in combinations(range(n), 3) if mid[t] == -1]
            raise InstanceError(
                f"missing triple {tuple(names[x] for x in missing[0])}"
                f" ({len(missing)} absent)")
        mid.setflags(write=False)
        idx = np.arange(n)
        cost = (mid != idx[None, :, None]).astype(np.uint8)
        distinct = ((idx[:, None, None] != idx[None, :, None])
                    & (idx[None, :, None] != idx[None, None, :])
                    & (idx[:, None, None] != idx[None, None, :]))
        cost &= distinct
        cost.setflags(write=False)
        self.n = n
        self.names = names
        self.mid = mid
        self.ordered_cost = cost

    @classmethod
    def from_ranking(cls, ranking: Ranking, names: Sequence[str] | None = None):
        """Instance whose middles are the positional medians of ``ranking``."""
        n = len(ranking)
        mids = {}
        for t in combinations(range(n), 3):
            mids[t] = sorted(t, key=ranking.position)[1]
        return cls(n, mids, names)

    def middle(self, u: int, v: int, w: int) -> int:
        return int(self.mid[u, v, w])

    def middles(self) -> dict[tuple[int, int, int], int]:
        return {t: int(self.mid[t]) for t in combinations(range(self.n), 3)}

    def with_middle(self, triple, m: int) -> "BetweennessInstance":
        mids = self.middles()
        mids[tuple(sorted(triple))] = m
        return BetweennessInstance(self.n, mids, self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InstanceError(f"unknown vertex {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, BetweennessInstance):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.mid, other.mid)

    def __repr__(self):
        return f"BetweennessInstance(n={self.n})"


def _triu3(m: int) -> np.ndarray:
    i = np.arange(m)
    return (i[:, None, None] < i[None, :, None]) & (i[None, :, None] < i[None, None, :])


def bt_cost(B: BetweennessInstance, pi: Ranking) -> int:
    """Number of triples whose designated vertex is not the positional median."""
    if len(pi) != B.n:
        raise InstanceError("ranking must cover every vertex")
    o = np.asarray(pi.order, dtype=np.intp)
    sub = B.ordered_cost[np.ix_(o, o, o)]
    return int(sub[_triu3(B.n)].sum())


def bt_vertex_costs(B: BetweennessInstance, pi: Ranking) -> np.ndarray:
    """Per vertex, the number of violated triples containing it."""
    o = np.asarray(pi.order, dtype=np.intp)
    viol = B.ordered_cost[np.ix_(o, o, o)] & _triu3(B.n)
    per_pos = viol.sum(axis=(1, 2)) + viol.sum(axis=(0, 2)) + viol.sum(axis=(0, 1))
    out = np.zeros(B.n, dtype=np.int64)
    out[o] = per_pos
    return out


def bt_b(B: BetweennessInstance, sigma, v: int, p) -> int:
    """Cost of all constraints ``{v} + Q`` with ``v`` moved to position ``p``.

    ``sigma`` is an :class:`Ordering` or a :class:`Ranking`; ``Q`` ranges over
    pairs of its vertices other than ``v``.
    """
    if isinstance(sigma, Ranking):
        sigma = Ordering.from_ranking(sigma)
    p = Fraction(p)
    others = [(pos, u) for u, pos in sigma.items() if u != v]
    if any(pos == p for pos, _ in others):
        raise InstanceError(f"position {p} is already occupied")
    others.sort()
    o = [u for _, u in others]
    k = sum(1 for pos, _ in others if pos < p)
    return int(insertion_costs(B, o, v)[k])


def insertion_costs(B: BetweennessInstance, others: Sequence[int], v: int) -> np.ndarray:
    """Cost of ``v``'s constraints for every gap ``g = 0..m`` of ``others``.

    Gap ``g`` places ``v`` after the first ``g`` vertices of ``others``.
    """
    m = len(others)
    if m < 2:
        return np.zeros(m + 1, dtype=np.int64)
    o = np.asarray(others, dtype=np.intp)
    c = B.ordered_cost
    up = np.triu(np.ones((m, m), dtype=bool), 1)
    first = (c[v][np.ix_(o, o)] & up).astype(np.int64)      # v, o_i, o_j
    middle = (c[o][:, v][:, o] & up).astype(np.int64)        # o_i, v, o_j
    last = (c[np.ix_(o, o)][:, :, v] & up).astype(np.int64)  # o_i, o_j, v
    g = np.arange(m + 1)
    rows = first.sum(axis=1)
    after = np.concatenate([np.cumsum(rows[::-1])[::-1], [0]])
    cols = last.sum(axis=0)
    before = np.concatenate([[0], np.cumsum(cols)])
    pre = np.zeros((m + 1, m + 1), dtype=np.int64)
    pre[1:, 1:] = middle.cumsum(axis=0).cumsum(axis=1)
    straddle = pre[g, m] - pre[g, g]
    return after + before + straddle


@dataclass
class CandidateSet:
    """Seed rankings with their costs, cheapest first."""

    rankings: list[Ranking]
    costs: list[int]

    def __len__(self):
        return len(self.rankings)

    def __iter__(self):
        return iter(zip(self.rankings, self.costs))


def _local_search(B: BetweennessInstance, order: list[int]) -> list[int]:
    # single-vertex moves, first improvement, until no vertex can improve
    improved = True
    while improved:
        improved = False
        for v in list(order):
            i = order.index(v)
            rest = order[:i] + order[i + 1:]
            costs = insertion_costs(B, rest, v)
            g = int(np.argmin(costs))
            if costs[g] < costs[i]:
                rest.insert(g, v)
                order = rest
                improved = True
    return order


def candidate_rankings(B: BetweennessInstance, seed=0, *, starts: int = 20,
                       max_candidates: int = 8) -> CandidateSet:
    """Distinct local optima of single-vertex-move search from random starts.

    A heuristic: nothing bounds the distance of these rankings to an
    optimum, which is why :func:`solve_betweenness` escalates its radii.
    """
    rng = np.random.default_rng(seed)
    found: dict[tuple[int, ...], int] = {}
    for _ in range(starts):
        order = _local_search(B, [int(x) for x in rng.permutation(B.n)])
        if order and order[0] > order[-1]:
            order.reverse()  # betweenness is reversal-invariant
        key = tuple(order)
        if key not in found:
            found[key] = bt_cost(B, Ranking(key))
    best = sorted(found.items(), key=lambda kv: (kv[1], kv[0]))[:max_candidates]
    return CandidateSet([Ranking(k) for k, _ in best], [c for _, c in best])


@dataclass(frozen=True)
class BtRadiusParams:
    """Radius constants; ``escalation`` multiplies both per round."""

    alpha1: Fraction = Fraction(4)
    alpha2: Fraction = Fraction(4)
    escalation: int = 2
    max_rounds: int = 8

    def __post_init__(self):
        if self.alpha1 <= 0 or self.alpha2 <= 0:
            raise ValueError("radius constants must be positive")
        if self.escalation < 2:
            raise ValueError("escalation factor must be at least 2")

    def scaled(self, factor: int) -> "BtRadiusParams":
        return BtRadiusParams(Fraction(self.alpha1) * factor, Fraction(self.alpha2) * factor,
                              self.escalation, self.max_rounds)


def _ceil_sum_sqrt(a: Fraction, y: Fraction) -> int:
    # smallest integer r with r >= a + sqrt(y), for a >= 0, y >= 0
    r = math.ceil(a)
    if y == 0:
        return r
    r = max(r, math.floor(a + math.isqrt(math.floor(y))))
    while (r - a) < 0 or (r - a) ** 2 < y:
        r += 1
    while r - 1 >= a and (r - 1 - a) ** 2 >= y:
        r -= 1
    return r


def compute_radii_bt(B: BetweennessInstance, seed: Ranking,
                     params: BtRadiusParams = BtRadiusParams()) -> list[int]:
    """``r(v) = ceil(a1*sqrt(C/n) + a2*b(v)/n)``, clamped to ``n``."""
    n = B.n
    if n == 0:
        return []
    c = bt_cost(B, seed)
    b = bt_vertex_costs(B, seed)
    a1, a2 = Fraction(params.alpha1), Fraction(params.alpha2)
    y = a1 * a1 * Fraction(c, n)
    return [min(n, _ceil_sum_sqrt(a2 * Fraction(int(b[v]), n), y)) for v in range(n)]


def _witness_quads(B: BetweennessInstance, seed: Ranking, o: np.ndarray) -> list[int]:
    """Triple-disjoint 4-sets no ranking can fully satisfy, as seed-bit masks.

    Each one forces at least one violated constraint among its own triples.
    """
    n = B.n
    pos = {v: i for i, v in enumerate(o.tolist())}
    c = B.ordered_cost
    viol = c[np.ix_(o, o, o)] & _triu3(n)
    bad = [tuple(int(o[x]) for x in t) for t in np.argwhere(viol)]
    used: set[frozenset] = set()
    orders = [p for p in permutations(range(4)) if p[0] < p[3]]
    quads = []
    for t in bad:
        ft = frozenset(t)
        if ft in used:
            continue
        for d in range(n):
            if d in ft:
                continue
            q = (*t, d)
            trip = [frozenset(x) for x in combinations(q, 3)]
            if any(x in used for x in trip):
                continue
            ok = True
            for p in orders:
                r = [q[i] for i in p]
                if (c[r[0], r[1], r[2]] + c[r[0], r[1], r[3]] + c[r[0], r[2], r[3]]
                        + c[r[1], r[2], r[3]]) == 0:
                    ok = False
                    break
            if ok:
                used.update(trip)
                quads.append(sum(1 << pos[x] for x in q))
                break
    return quads


class _BtSearch:
    """Prefix recurrence in seed-position space with an admissible bound.

    ``g`` is the prefix cost of the recurrence.  The bound counts the
    constraints whose one placed vertex is their middle (already certain to
    be violated) plus the packed witness 4-sets that are still fully unplaced.
    """

    def __init__(self, B: BetweennessInstance, seed: Ranking):
        o = np.asarray(seed.order, dtype=np.intp)
        n = len(o)
        self.n = n
        mid = B.mid[np.ix_(o, o, o)].astype(np.int64)
        # relabel middles into seed-position space
        relabel = np.full(B.n, -1, dtype=np.int64)
        relabel[o] = np.arange(n)
        mid = np.where(mid >= 0, relabel[np.maximum(mid, 0)], -1)
        idx = np.arange(n)
        # mu[v, u, q] = [mid(u, v, q) == u]; mv[v, q, r] = [mid(v, q, r) == v]
        self.mu = np.transpose(mid == idx[:, None, None], (1, 0, 2)).astype(np.float64)
        self.mv = (mid == idx[:, None, None]).astype(np.float64)
        self.pending = {0: 0}
        self.quads_by_bit: list[list[int]] = [[] for _ in range(n)]
        quads = _witness_quads(B, seed, o)
        for qm in quads:
            for i in range(n):
                if qm >> i & 1:
                    self.quads_by_bit[i].append(qm)
        self.quad_free = {0: len(quads)}
        self.h0 = len(quads)

    def successors(self, mask, size, bits):
        n = self.n
        s = np.fromiter(((mask >> i) & 1 for i in range(n)), dtype=np.float64, count=n)
        k = len(bits)
        X = np.repeat((1.0 - s)[None, :], k, axis=0)
        X[np.arange(k), bits] = 0.0
        mu = self.mu[bits]
        mv = self.mv[bits]
        a_u = np.einsum("kq,kq->k", s @ mu, X)            # mid is the placed u
        a_q = np.einsum("kq,kq->k", mu @ s, X)            # mid is the outside q
        new = np.einsum("kq,kq->k", np.einsum("kqr,kr->kq", mv, X), X) / 2
        pend = self.pending[mask]
        free = self.quad_free[mask]
        out = []
        for j, v in enumerate(bits):
            child = mask | (1 << v)
            p_child = pend - int(a_u[j]) + int(new[j])
            f_child = free - sum(1 for qm in self.quads_by_bit[v] if not qm & mask)
            old = self.pending.get(child)
            if old is not None and old != p_child:
                raise AssertionError("pending count depends on the path")
            self.pending[child] = p_child
            self.quad_free[child] = f_child
            out.append((v, int(a_u[j]) + int(a_q[j]), p_child + f_child))
        return out


def banded_dp_bt(B: BetweennessInstance, seed: Ranking, radii, *,
                 max_states: int | None = DEFAULT_MAX_STATES,
                 psi_cap: int | None = None):
    """Minimum-cost ranking with ``|pi(v) - seed(v)| <= radii[v]``.

    Returns ``(ranking, cost, dp_states)``; the cost is the value of the
    prefix recurrence at the full set.
    """
    ranking, cost, states, _ = _banded_bt(B, seed, radii, max_states, psi_cap)
    return ranking, cost, states


def _banded_bt(B, seed, radii, max_states, psi_cap):
    band = Band(seed, radii)
    if psi_cap is not None and band.psi > psi_cap:
        raise BandTooWide(f"psi={band.psi} exceeds cap {psi_cap}")
    if B.n == 0:
        return Ranking(()), 0, 0, 0
    search = _BtSearch(B, seed)
    cost, bits, states = best_first(band, search.successors, search.h0, max_states)
    return Ranking(seed.order[b] for b in bits), cost, states, search.h0


Provider = Callable[[BetweennessInstance, object], CandidateSet]


def solve_betweenness(B: BetweennessInstance, *, seed=0,
                      params: BtRadiusParams = BtRadiusParams(),
                      candidates: Provider | None = None, escalate: bool = True,
                      agreements: int = 1,
                      max_states: int | None = DEFAULT_MAX_STATES,
                      psi_cap: int | None = None) -> SolveReport:
    """Best banded optimum over the seed rankings passing the 2x cost guard.

    With ``escalate`` the radius constants are multiplied by
    ``params.escalation`` until ``agreements`` successive rounds return the
    same cost, or until every radius covers the whole range, in which case
    the result is certified optimal.  A result matching the packing lower
    bound is certified too and stops escalation early.  Running out of
    rounds raises :class:`BandTooWide`.
    """
    t0 = time.perf_counter()
    n = B.n
    provider = candidates or candidate_rankings
    cands = provider(B, seed)
    if not len(cands):
        raise ValueError("candidate provider returned no rankings")
    good = min(cands.costs)
    admitted = [(r, c) for r, c in cands if c <= 2 * good]

    history = []
    best = None
    lower = 0
    factor = 1
    rounds = 0
    while True:
        level = params.scaled(factor)
        round_best = None
        psi = 0
        states = 0
        full = True
        for pi1, c1 in admitted:
            radii = compute_radii_bt(B, pi1, level)
            full = full and all(r >= n - 1 for r in radii)
            ranking, cost, st, lb = _banded_bt(B, pi1, radii, max_states, psi_cap)
            lower = max(lower, lb)
            band_psi = Band(pi1, radii).psi
            psi = max(psi, band_psi)
            states += st
            if round_best is None or cost < round_best[1]:
                round_best = (ranking, cost, c1, band_psi)
        history.append({"factor": factor, "cost": round_best[1], "psi": psi,
                        "dp_states": states, "full_band": full})
        if best is None or round_best[1] < best[1]:
            best = round_best
        rounds += 1
        # a full band is exhaustive; meeting a global lower bound is a proof
        if full or best[1] == lower:
            certified = True
            break
        if not escalate:
            certified = False
            break
        agreed = 0
        for a, b in zip(reversed(history), list(reversed(history))[1:]):
            if a["cost"] != b["cost"]:
                break
            agreed += 1
        if agreed >= agreements:
            certified = False
            break
        if rounds >= params.max_rounds:
            raise BandTooWide(f"no agreement after {rounds} escalation rounds")
        factor *= params.escalation

    ranking, cost, seed_cost, _ = best
    actual = bt_cost(B, ranking)
    if actual != cost:
        raise AssertionError(f"recurrence gave {cost}, ranking costs {actual}")
    first = history[0]
    return SolveReport(ranking=ranking, cost=cost, denom=1, psi=first["psi"],
                       dp_states=sum(h["dp_states"] for h in history),
                       elapsed=time.perf_counter() - t0, seed_cost=seed_cost,
                       kernel_size=n, certified=certified, names=B.names,
                       extra={"rounds": history, "candidates": len(cands),
                              "admitted": len(admitted), "good_cost": good,
                              "lower_bound": lower})

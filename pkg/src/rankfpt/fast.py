"""Exact weighted feedback arc set on tournaments.

Pipeline: kernelize, seed with the weighted-indegree ranking, give every
vertex a displacement radius, then find the cheapest ranking that keeps all
vertices within their radius of the seed.  The radii are large enough that
every optimal ranking lies inside the band, so the banded optimum is a
global optimum.

The banded recurrence is evaluated best-first: the state space is exactly
the valid prefix sets, but states are only materialized when their cost plus
an admissible lower bound on the remainder can still beat the optimum.  The
bound is the sum of minority weights over the unplaced pairs plus a greedy
packing of directed triangles in the majority-excess graph; it is consistent,
so no state is expanded twice.
"""

from __future__ import annotations

import math
import time
from itertools import combinations

import numpy as np

from .band import DEFAULT_MAX_STATES, Band, SolveReport, best_first
from .core import BandTooWide, Ranking, WeightedTournament, fast_b, fast_cost
from .kernel import KernelResult, kernelize

__all__ = ["approx_ranking", "compute_radii", "banded_dp", "banded_divide_conquer",
           "solve_fast", "psi_bound_holds", "SolveReport", "Band"]


def approx_ranking(T: WeightedTournament) -> Ranking:
    """Vertices by ascending weighted indegree, ties by id."""
    indeg = T.indegrees()
    return Ranking(sorted(range(T.n), key=lambda v: (int(indeg[v]), v)))


def _ceil_radius(two_b: int, c: int, D: int) -> int:
    # smallest integer r with r*D >= two_b + sqrt(32*c*D)
    x = 32 * c * D
    t = 0 if x == 0 else math.isqrt(x - 1) + 1
    return -(-(two_b + t) // D)


def compute_radii(T: WeightedTournament, seed: Ranking) -> list[int]:
    """``r(v) = ceil(4*sqrt(2*C) + 2*b(v))`` with costs in instance units.

    ``C`` is the seed cost and ``b(v)`` the cost of ``v``'s arcs at its own
    seed position.  Returned as a list indexed by vertex.
    """
    c = fast_cost(T, seed)
    return [_ceil_radius(2 * fast_b(T, seed, v, seed.position(v)), c, T.denom)
            for v in range(T.n)]


def psi_bound_holds(psi: int, seed_cost: int, denom: int) -> bool:
    """Exact check of ``psi <= 12*sqrt(2*C/D) + 1``."""
    if psi <= 1:
        return True
    # (psi - 1)^2 <= 288 * C / D
    return (psi - 1) ** 2 * denom <= 288 * seed_cost


class _Bound:
    """Lower-bound tables for the best-first search, in seed-position space."""

    def __init__(self, T: WeightedTournament, seed: Ranking):
        o = np.asarray(seed.order, dtype=np.intp)
        w = T.weights[np.ix_(o, o)]
        n = len(o)
        excess = np.maximum(w - w.T, 0)
        self.rin = [int(x) for x in excess.sum(axis=0)]
        pairmin = int(np.triu(np.minimum(w, w.T), 1).sum())
        self.planes = []
        for v in range(n):
            col = excess[:, v]
            planes = []
            for b in range(int(col.max()).bit_length() if n else 0):
                m = 0
                for q in np.flatnonzero((col >> b) & 1):
                    m |= 1 << int(q)
                if m:
                    planes.append((b, m))
            self.planes.append(planes)
        self.cycles: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        packed = self._pack(excess)
        self.h0 = pairmin + packed

    def _pack(self, excess: np.ndarray) -> int:
        n = excess.shape[0]
        e = excess > 0
        tris = []
        idx = np.arange(n)
        for a in range(n):
            for b in np.flatnonzero(e[a] & (idx > a)):
                for c in np.flatnonzero(e[b] & e[:, a] & (idx > a)):
                    tris.append((a, int(b), int(c)))
        if not tris:
            return 0
        # scarce arcs first
        load: dict[tuple[int, int], int] = {}
        for a, b, c in tris:
            for arc in ((a, b), (b, c), (c, a)):
                load[arc] = load.get(arc, 0) + 1
        tris.sort(key=lambda t: (load[(t[0], t[1])] + load[(t[1], t[2])]
                                 + load[(t[2], t[0])], t))
        cap = excess.copy()
        total = 0
        for a, b, c in tris:
            y = int(min(cap[a, b], cap[b, c], cap[c, a]))
            if y <= 0:
                continue
            cap[a, b] -= y
            cap[b, c] -= y
            cap[c, a] -= y
            total += y
            self.cycles[a].append(((1 << b) | (1 << c), y))
            self.cycles[b].append(((1 << a) | (1 << c), y))
            self.cycles[c].append(((1 << a) | (1 << b), y))
        return total

    def successors(self, mask, size, bits):
        for v in bits:
            inner = 0
            for b, m in self.planes[v]:
                inner += (mask & m).bit_count() << b
            dropped = 0
            for m, y in self.cycles[v]:
                if not mask & m:
                    dropped += y
            yield v, self.rin[v] - inner - dropped, 0


def banded_dp(T: WeightedTournament, seed: Ranking, radii, *,
              max_states: int | None = DEFAULT_MAX_STATES,
              psi_cap: int | None = None):
    """Cheapest ranking with ``|pi(v) - seed(v)| <= radii[v]`` for all ``v``.

    Returns ``(ranking, cost, dp_states)``.  Raises :class:`BandTooWide` when
    the band is wider than ``psi_cap`` or the search would store more than
    ``max_states`` prefix sets.
    """
    ranking, cost, states, _ = _banded(T, seed, radii, max_states, psi_cap)
    return ranking, cost, states


def _banded(T, seed, radii, max_states, psi_cap):
    band = Band(seed, radii)
    if psi_cap is not None and band.psi > psi_cap:
        raise BandTooWide(f"psi={band.psi} exceeds cap {psi_cap}")
    if T.n == 0:
        return Ranking(()), 0, 0, 0
    bound = _Bound(T, seed)
    reduced, bits, states = best_first(band, bound.successors, 0, max_states)
    ranking = Ranking(seed.order[b] for b in bits)
    return ranking, bound.h0 + reduced, states, bound.h0


def banded_divide_conquer(T: WeightedTournament, seed: Ranking, radii):
    """Same optimum as :func:`banded_dp` in polynomial space.

    The optimal chain of valid sets between two fixed endpoints is split at
    its middle size; every valid middle set is tried and both halves are
    solved recursively without memoization.  Returns ``(ranking, cost)``.
    """
    band = Band(seed, radii)
    n = T.n
    if n == 0:
        return Ranking(()), 0
    order = seed.order
    wp = T.weights[np.ix_(order, order)]
    into = [[int(x) for x in wp[:, v]] for v in range(n)]

    def step(lo: int, v: int) -> int:
        # v appended after lo: pays every arc from a vertex placed later
        hi = lo | (1 << v)
        col = into[v]
        return sum(col[q] for q in range(n) if not hi >> q & 1)

    def solve(lo: int, hi: int):
        ls, hs = lo.bit_count(), hi.bit_count()
        if hs - ls == 1:
            return step(lo, (hi ^ lo).bit_length() - 1), [(hi ^ lo).bit_length() - 1]
        mid = (ls + hs) // 2
        need = band.req[mid] & ~lo
        free = hi & ~lo & band.allow[mid]
        if need & ~free:
            return None
        pool = [b for b in range(n) if (free & ~need) >> b & 1]
        k = mid - ls - need.bit_count()
        if k < 0 or k > len(pool):
            return None
        best = None
        for extra in combinations(pool, k):
            m = lo | need
            for b in extra:
                m |= 1 << b
            left = solve(lo, m)
            if left is None:
                continue
            right = solve(m, hi)
            if right is None:
                continue
            c = left[0] + right[0]
            if best is None or c < best[0]:
                best = (c, left[1] + right[1])
        return best

    res = solve(0, (1 << n) - 1)
    if res is None:
        raise RuntimeError("no valid ranking inside the band")
    cost, bits = res
    return Ranking(order[b] for b in bits), cost


def solve_fast(T: WeightedTournament, *, kernel: bool = True, method: str = "dp",
               max_states: int | None = DEFAULT_MAX_STATES,
               psi_cap: int | None = None) -> SolveReport:
    """Optimal ranking of ``T`` with solve statistics.

    ``method`` is ``"dp"`` (best-first banded recurrence) or ``"dc"``
    (divide and conquer, polynomial space).
    """
    t0 = time.perf_counter()
    if kernel:
        upper = fast_cost(T, approx_ranking(T))
        kr = kernelize(T, upper)
    else:
        kr = KernelResult(T, 0, tuple(range(T.n)))
    K = kr.kernel
    seed = approx_ranking(K)
    seed_cost = fast_cost(K, seed)
    radii = compute_radii(K, seed)
    band = Band(seed, radii)
    if psi_cap is not None and band.psi > psi_cap:
        raise BandTooWide(f"psi={band.psi} exceeds cap {psi_cap}")
    if method == "dp":
        ranking_k, cost_k, states, lower = _banded(K, seed, radii, max_states, None)
    elif method == "dc":
        ranking_k, cost_k = banded_divide_conquer(K, seed, radii)
        states, lower = 0, None
    else:
        raise ValueError(f"unknown method {method!r}")
    ranking = kr.lift(ranking_k)
    cost = cost_k + kr.shift
    actual = fast_cost(T, ranking)
    if actual != cost:
        raise AssertionError(f"lifted ranking costs {actual}, expected {cost}")
    return SolveReport(ranking=ranking, cost=cost, denom=T.denom,
                       kernel_shift=kr.shift, psi=band.psi, dp_states=states,
                       elapsed=time.perf_counter() - t0, seed_cost=seed_cost,
                       kernel_size=K.n, names=T.names,
                       extra={"radii": radii, "kernel_seed": seed.order,
                              "lower_bound": None if lower is None else lower + kr.shift})

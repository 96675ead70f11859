"""Brute-force ground truth.

Nothing here is shared with the solvers except the cost functions, so a
solver bug cannot hide behind a matching oracle bug.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import InstanceError, Ranking, WeightedTournament

__all__ = ["oracle_fast_perm", "oracle_fast_subset", "oracle_bt_perm"]

MAX_PERM_FAST = 10
MAX_SUBSET_FAST = 24
MAX_PERM_BT = 8


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    """All permutations of ``range(n)`` as rows, in lexicographic order."""
    if n <= 1:
        return np.zeros((1, n), dtype=np.int8)
    sub = _perm_table(n - 1)
    blocks = []
    for first in range(n):
        # relabel 0..n-2 onto range(n) without `first`; monotone, so order is kept
        rest = sub + (sub >= first)
        head = np.full((len(sub), 1), first, dtype=np.int8)
        blocks.append(np.hstack([head, rest.astype(np.int8)]))
    table = np.vstack(blocks)
    table.setflags(write=False)
    return table


def _positions(perms: np.ndarray) -> np.ndarray:
    pos = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    pos[rows, perms] = np.arange(perms.shape[1], dtype=perms.dtype)
    return pos


def oracle_fast_perm(T: WeightedTournament) -> tuple[int, Ranking]:
    """Minimum over all ``n!`` rankings; first lexicographic minimizer."""
    if T.n > MAX_PERM_FAST:
        raise InstanceError(f"oracle_fast_perm limited to n <= {MAX_PERM_FAST}")
    n = T.n
    perms = _perm_table(n)
    pos = _positions(perms)
    cost = np.zeros(len(perms), dtype=np.int64)
    for u, v in combinations(range(n), 2):
        # the later vertex of the pair pays its arc towards the earlier one
        cost += np.where(pos[:, u] < pos[:, v], T.w(v, u), T.w(u, v))
    k = int(np.argmin(cost))
    return int(cost[k]), Ranking(perms[k].tolist())


def oracle_fast_subset(T: WeightedTournament) -> tuple[int, Ranking]:
    """Subset DP: ``best[S] = min_v best[S - v] + sum_{u in S - v} w[v][u]``."""
    n = T.n
    if n > MAX_SUBSET_FAST:
        raise InstanceError(f"oracle_fast_subset limited to n <= {MAX_SUBSET_FAST}")
    if n == 0:
        return 0, Ranking(())
    w = T.weights
    size = 1 << n
    # out_to[v][S] = sum_{u in S} w[v][u]
    out_to = np.zeros((n, size), dtype=np.int64)
    for v in range(n):
        row = out_to[v]
        for b in range(n):
            row[1 << b:1 << (b + 1)] = row[:1 << b] + w[v, b]
    masks = np.arange(size, dtype=np.int64)
    popcnt = np.zeros(size, dtype=np.int64)
    for b in range(n):
        popcnt += (masks >> b) & 1
    inf = np.iinfo(np.int64).max // 4
    best = np.full(size, inf, dtype=np.int64)
    last = np.full(size, -1, dtype=np.int64)
    best[0] = 0
    for k in range(1, n + 1):
        layer = masks[popcnt == k]
        cur = np.full(len(layer), inf, dtype=np.int64)
        arg = np.full(len(layer), -1, dtype=np.int64)
        for v in range(n):
            has = ((layer >> v) & 1).astype(bool)
            prev = layer[has] ^ (1 << v)
            cand = best[prev] + out_to[v][prev]
            sel = np.flatnonzero(has)
            better = cand < cur[sel]
            cur[sel[better]] = cand[better]
            arg[sel[better]] = v
        best[layer] = cur
        last[layer] = arg
    order = []
    m = size - 1
    while m:
        v = int(last[m])
        order.append(v)
        m ^= 1 << v
    order.reverse()
    return int(best[size - 1]), Ranking(order)


def oracle_bt_perm(B) -> tuple[int, Ranking]:
    """Minimum betweenness cost over all ``n!`` rankings; first lexicographic minimizer."""
    if B.n > MAX_PERM_BT:
        raise InstanceError(f"oracle_bt_perm limited to n <= {MAX_PERM_BT}")
    n = B.n
    perms = _perm_table(n)
    pos = _positions(perms)
    cost = np.zeros(len(perms), dtype=np.int64)
    for t in combinations(range(n), 3):
        m = B.middle(*t)
        a, b = (x for x in t if x != m)
        pm, pa, pb = pos[:, m], pos[:, a], pos[:, b]
        between = ((pa < pm) & (pm < pb)) | ((pb < pm) & (pm < pa))
        cost += ~between
    k = int(np.argmin(cost))
    return int(cost[k]), Ranking(perms[k].tolist())

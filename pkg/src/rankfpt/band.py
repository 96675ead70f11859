"""Valid prefix sets around a seed ranking and a best-first search over them.

Given a seed ranking ``pi1`` and radii ``r``, a set ``S`` is *valid* when it
contains every ``v`` with ``pi1(v) <= |S| - r(v)`` and no ``v`` with
``pi1(v) > |S| + r(v)``.  A ranking keeps all ``|pi(v) - pi1(v)| <= r(v)``
exactly when each of its prefixes is valid, so the optimal banded ranking is
a shortest path from the empty set to the full set through valid sets.

Sets are Python ints used as bit sets; bit ``i`` stands for the vertex at
seed position ``i + 1``.
"""

from __future__ import annotations

import heapq
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import BandTooWide, Ranking

__all__ = ["Band", "SolveReport", "best_first", "DEFAULT_MAX_STATES"]

DEFAULT_MAX_STATES = 2_000_000


class Band:
    """Forced/window decomposition of the valid sets of every size."""

    def __init__(self, seed: Ranking, radii: Sequence[int]):
        n = len(seed)
        if len(radii) != n:
            raise ValueError("one radius per vertex required")
        if any(r < 0 for r in radii):
            raise ValueError("radii must be non-negative")
        self.seed = seed
        self.radii = tuple(int(r) for r in radii)
        self.n = n
        req = [0] * (n + 2)
        allow = [0] * (n + 2)
        for i, v in enumerate(seed.order):
            p, r = i + 1, self.radii[v]
            # forced from size p + r on, admissible from size p - r on
            req[min(max(p + r, 0), n + 1)] |= 1 << i
            allow[min(max(p - r, 0), n + 1)] |= 1 << i
        for s in range(1, n + 2):
            req[s] |= req[s - 1]
            allow[s] |= allow[s - 1]
        self.req = req
        self.allow = allow
        self.psi = max((allow[s] & ~req[s]).bit_count() for s in range(n + 1))

    def _vertices(self, mask: int) -> list[int]:
        order = self.seed.order
        return [order[i] for i in range(self.n) if mask >> i & 1]

    def forced(self, s: int) -> list[int]:
        return self._vertices(self.req[s])

    def window(self, s: int) -> list[int]:
        return self._vertices(self.allow[s] & ~self.req[s])

    def mask_of(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << (self.seed.position(v) - 1)
        return m

    def is_valid_mask(self, mask: int) -> bool:
        s = mask.bit_count()
        return (self.req[s] & ~mask) == 0 and (mask & ~self.allow[s]) == 0

    def is_valid(self, vertices: Iterable[int]) -> bool:
        return self.is_valid_mask(self.mask_of(vertices))

    def contains(self, ranking: Ranking) -> bool:
        """True when every vertex stays within its radius of the seed."""
        return all(abs(ranking.position(v) - self.seed.position(v)) <= self.radii[v]
                   for v in ranking.order)

    def valid_set_count(self) -> int:
        """Number of valid sets of sizes 1..n (brute force over windows)."""
        total = 0
        for s in range(1, self.n + 1):
            forced = self.req[s].bit_count()
            win = (self.allow[s] & ~self.req[s]).bit_count()
            k = s - forced
            if 0 <= k <= win:
                total += comb(win, k)
        return total

    def successors(self, mask: int, size: int) -> list[int]:
        """Bits that can be appended to the valid set ``mask`` of ``size``."""
        nxt = size + 1
        missing = self.req[nxt] & ~mask
        if missing:
            if missing & (missing - 1):
                return []
            cand = missing
        else:
            cand = self.allow[nxt] & ~mask
        out = []
        while cand:
            low = cand & -cand
            out.append(low.bit_length() - 1)
            cand ^= low
        return out


@dataclass
class SolveReport:
    """Outcome of an exact solve; ``cost`` is a numerator over ``denom``."""

    ranking: Ranking
    cost: int
    denom: int = 1
    kernel_shift: int = 0
    psi: int = 0
    dp_states: int = 0
    elapsed: float = 0.0
    seed_cost: int = 0
    kernel_size: int = 0
    certified: bool = True
    names: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def value(self) -> Fraction:
        return Fraction(self.cost, self.denom)

    def ranking_names(self) -> list[str]:
        if not self.names:
            return [str(v) for v in self.ranking.order]
        return self.ranking.names(self.names)


Successors = Callable[[int, int, list[int]], Iterable[tuple[int, int, int]]]


def best_first(band: Band, successors: Successors, start_h: int = 0,
               max_states: int | None = DEFAULT_MAX_STATES):
    """Shortest path over valid sets from the empty set to the full set.

    ``successors(mask, size, bits)`` yields ``(bit, increment, h_child)`` for
    the candidate bits; increments must be non-negative and ``h`` an
    admissible lower bound on the remaining cost.  States are re-expanded
    when reached more cheaply, so ``h`` need not be consistent.

    Returns ``(cost, bit_order, states)`` where ``states`` counts the
    distinct non-empty sets reached.
    """
    n = band.n
    full = (1 << n) - 1
    g = {0: 0}
    parent: dict[int, tuple[int, int]] = {}
    heap = [(start_h, 0, 0, 0, 0)]
    seq = 0
    while heap:
        _f, negsize, _seq, gs, mask = heapq.heappop(heap)
        if gs != g[mask]:
            continue
        if mask == full:
            bits = []
            while mask:
                mask, b = parent[mask]
                bits.append(b)
            bits.reverse()
            return gs, bits, len(g) - 1
        size = -negsize
        cand = band.successors(mask, size)
        if not cand:
            continue
        for bit, inc, h in successors(mask, size, cand):
            child = mask | (1 << bit)
            ng = gs + inc
            old = g.get(child)
            if old is None or ng < old:
                g[child] = ng
                parent[child] = (mask, bit)
                seq += 1
                heapq.heappush(heap, (ng + h, negsize - 1, seq, ng, child))
        if max_states is not None and len(g) - 1 > max_states:
            raise BandTooWide(
                f"banded search exceeded {max_states} states (psi={band.psi})")
    raise RuntimeError("no valid ranking inside the band")  # seed is always valid

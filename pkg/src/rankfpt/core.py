"""Instances, rankings and exact cost functions shared by every solver.

Weights are integers over an instance-wide denominator ``D``: the weight of
the arc ``u -> v`` is ``w[u, v] / D`` and ``w[u, v] + w[v, u] == D``.  All
costs are therefore integers in units of ``1/D`` and every comparison made
by a solver is an exact integer comparison.

Ranking convention: an arc ``u -> v`` is *backward* (and its weight is paid)
when ``v`` is placed before ``u``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "InstanceError",
    "BandTooWide",
    "WeightedTournament",
    "Ranking",
    "Ordering",
    "kendall_tau",
    "fast_cost",
    "fast_b",
    "validate",
    "format_cost",
]


class InstanceError(ValueError):
    """Malformed instance, ranking or profile."""


class BandTooWide(RuntimeError):
    """A banded search exceeded its resource guard."""


class WeightedTournament:
    """Complete directed graph with exact pair weights.

    Parameters
    ----------
    weights : array_like, shape (n, n)
        Integer numerators; ``weights[u][v]`` is the weight of ``u -> v``.
        The diagonal is ignored.
    denom : int
        The common denominator ``D``.
    names : sequence of str, optional
        External vertex names, default ``"v1" .. "vn"``.
    check : bool
        Raise :class:`InstanceError` when the complement identity fails.
    """

    __slots__ = ("n", "denom", "weights", "names", "_index")

    def __init__(self, weights, denom: int = 1, names: Sequence[str] | None = None,
                 check: bool = True):
        w = np.array(weights, dtype=np.int64, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InstanceError(f"weights must be square, got shape {w.shape}")
        if int(denom) <= 0:
            raise InstanceError("denominator must be positive")
        n = w.shape[0]
        np.fill_diagonal(w, 0)
        w.setflags(write=False)
        if names is None:
            names = [f"v{i + 1}" for i in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n or len(set(names)) != n:
            raise InstanceError("names must be n distinct strings")
        self.n = n
        self.denom = int(denom)
        self.weights = w
        self.names = names
        self._index = {s: i for i, s in enumerate(names)}
        if check:
            bad = validate(self)
            if bad:
                u, v = bad[0]
                raise InstanceError(
                    f"w[{names[u]}][{names[v]}] + w[{names[v]}][{names[u]}] != {self.denom}"
                    f" ({len(bad)} violating pairs)")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]],
                  names: Sequence[str] | None = None) -> "WeightedTournament":
        """Unweighted tournament (``D = 1``) from one arc per pair."""
        w = np.zeros((n, n), dtype=np.int64)
        for u, v in arcs:
            if u == v:
                raise InstanceError("self-loop")
            w[u, v] = 1
        return cls(w, 1, names)

    @classmethod
    def chain(cls, n: int, names: Sequence[str] | None = None) -> "WeightedTournament":
        """Acyclic tournament with ``i -> j`` for every ``i < j``."""
        return cls(np.triu(np.ones((n, n), dtype=np.int64), 1), 1, names)

    @classmethod
    def from_fractions(cls, n: int, pairs: Mapping[tuple[int, int], Fraction],
                       names: Sequence[str] | None = None) -> "WeightedTournament":
        """Build from ``{(u, v): w_uv}`` with one entry per unordered pair."""
        den = math.lcm(1, *(Fraction(f).denominator for f in pairs.values()))
        w = np.zeros((n, n), dtype=np.int64)
        for (u, v), f in pairs.items():
            num = Fraction(f) * den
            w[u, v] = int(num)
            w[v, u] = den - int(num)
        return cls(w, den, names)

    # -- accessors --------------------------------------------------------

    def w(self, u: int, v: int) -> int:
        return int(self.weights[u, v])

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InstanceError(f"unknown vertex {name!r}") from None

    def indegrees(self) -> np.ndarray:
        """Weighted indegree ``sum_u w[u, v]`` of every vertex."""
        return self.weights.sum(axis=0)

    def induced(self, vertices: Sequence[int]) -> "WeightedTournament":
        """Sub-tournament on ``vertices`` (new ids follow the given order)."""
        idx = np.asarray(vertices, dtype=np.intp)
        return WeightedTournament(self.weights[np.ix_(idx, idx)], self.denom,
                                  [self.names[i] for i in idx], check=False)

    def with_weights(self, weights) -> "WeightedTournament":
        return WeightedTournament(weights, self.denom, self.names)

    def __eq__(self, other):
        if not isinstance(other, WeightedTournament):
            return NotImplemented
        return (self.denom == other.denom and self.names == other.names
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.n, self.denom, self.names, self.weights.tobytes()))

    def __repr__(self):
        return f"WeightedTournament(n={self.n}, denom={self.denom})"


class Ranking:
    """A bijection from a vertex set onto positions ``1 .. len``.

    ``order[i]`` is the vertex at position ``i + 1``; :meth:`position` is the
    forward map.
    """

    __slots__ = ("order", "_pos")

    def __init__(self, order: Iterable[int]):
        order = tuple(int(v) for v in order)
        pos = {v: i + 1 for i, v in enumerate(order)}
        if len(pos) != len(order):
            raise InstanceError("ranking repeats a vertex")
        self.order = order
        self._pos = pos

    def position(self, v: int) -> int:
        return self._pos[v]

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._pos)

    def __contains__(self, v) -> bool:
        return v in self._pos

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __getitem__(self, i):
        return self.order[i]

    def reverse(self) -> "Ranking":
        return Ranking(reversed(self.order))

    def restrict(self, vertices) -> "Ranking":
        keep = set(vertices)
        return Ranking(v for v in self.order if v in keep)

    def names(self, names: Sequence[str]) -> list[str]:
        return [names[v] for v in self.order]

    def __eq__(self, other):
        if isinstance(other, Ranking):
            return self.order == other.order
        if isinstance(other, (tuple, list)):
            return self.order == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return f"Ranking({list(self.order)})"


class Ordering:
    """Partial injection from vertices to rational positions."""

    __slots__ = ("_pos",)

    def __init__(self, positions: Mapping[int, object]):
        pos = {int(v): Fraction(p) for v, p in positions.items()}
        if len(set(pos.values())) != len(pos):
            raise InstanceError("ordering is not injective")
        self._pos = pos

    @classmethod
    def from_ranking(cls, ranking: Ranking) -> "Ordering":
        return cls({v: i + 1 for i, v in enumerate(ranking.order)})

    def position(self, v: int) -> Fraction:
        return self._pos[v]

    def items(self):
        return self._pos.items()

    def __contains__(self, v) -> bool:
        return v in self._pos

    def __len__(self):
        return len(self._pos)

    def to_ranking(self) -> Ranking:
        return Ranking(sorted(self._pos, key=self._pos.__getitem__))


def _count_inversions(seq: list[int]) -> int:
    # bottom-up merge sort
    a = list(seq)
    n = len(a)
    inv = 0
    width = 1
    buf = [0] * n
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if a[i] <= a[j]:
                    buf[k] = a[i]
                    i += 1
                else:
                    buf[k] = a[j]
                    inv += mid - i
                    j += 1
                k += 1
            buf[k:k + mid - i] = a[i:mid]
            k += mid - i
            buf[k:k + hi - j] = a[j:hi]
        a, buf = buf, a
        width *= 2
    return inv


def kendall_tau(a: Ranking, b: Ranking) -> int:
    """Number of vertex pairs ordered differently by ``a`` and ``b``."""
    if len(a) != len(b) or a.vertices != b.vertices:
        raise InstanceError("rankings are over different vertex sets")
    return _count_inversions([a.position(v) for v in b.order])


def _order_array(T: WeightedTournament, pi: Ranking) -> np.ndarray:
    if len(pi) != T.n or pi.vertices != frozenset(range(T.n)):
        raise InstanceError("ranking must cover every vertex of the instance")
    return np.asarray(pi.order, dtype=np.intp)


def fast_cost(T: WeightedTournament, pi: Ranking) -> int:
    """Total weight of backward arcs, in units of ``1/D``."""
    o = _order_array(T, pi)
    sub = T.weights[np.ix_(o, o)]
    # sub[i, j] with i > j is the arc from a later vertex to an earlier one
    return int(np.tril(sub, -1).sum())


def fast_b(T: WeightedTournament, pi: Ranking, v: int, g: int) -> int:
    """Cost of the arcs at ``v`` when ``v`` sits at position ``g + 1/2`` of ``pi``.

    ``pi`` may or may not contain ``v``; ``v``'s own entry is skipped.
    """
    total = 0
    w = T.weights
    for u in pi.order:
        if u == v:
            continue
        total += int(w[v, u]) if pi.position(u) <= g else int(w[u, v])
    return total


def validate(T: WeightedTournament) -> list[tuple[int, int]]:
    """Pairs ``u < v`` violating ``w[u][v] + w[v][u] == D`` or the weight range."""
    w = T.weights
    n = T.n
    bad = []
    iu, iv = np.triu_indices(n, 1)
    sums = w[iu, iv] + w[iv, iu]
    wrong = (sums != T.denom) | (w[iu, iv] < 0) | (w[iv, iu] < 0)
    for k in np.flatnonzero(wrong):
        bad.append((int(iu[k]), int(iv[k])))
    return bad


def format_cost(num: int, den: int) -> str:
    return f"{num}/{den}"

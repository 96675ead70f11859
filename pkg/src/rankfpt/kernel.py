"""Polynomial-time kernel for weighted feedback arc set on tournaments.

Two reduction rules are applied to a fixpoint, both phrased on the
*majority tournament* (the heavier arc of every pair, ties to the lower id):

* an arc lying in more than ``2U`` directed triangles must be backward in
  every optimal ranking, so its weight is paid up front and the pair is made
  fully one-sided;
* a vertex lying in no directed triangle has majority predecessors ``P`` and
  successors ``Q`` with every ``P -> Q`` arc in the majority, so placing it
  between them is optimal; it is removed and its minority weights are paid.

``U`` must be an upper bound on the optimum (the cost of any ranking works,
the solver passes the weighted-indegree ranking).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import InstanceError, Ranking, WeightedTournament

__all__ = ["MajorityTournament", "KernelResult", "majority", "triangles_through",
           "kernelize"]


@dataclass(frozen=True)
class MajorityTournament:
    """Unweighted tournament; ``adj[u, v]`` is true iff ``u -> v`` is a majority arc."""

    adj: np.ndarray

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def arcs(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in zip(*np.nonzero(self.adj))}

    def triangle_counts(self) -> np.ndarray:
        """``out[u, v]`` = number of directed triangles through arc ``u -> v``."""
        a = self.adj.astype(np.int64)
        # paths v -> x -> u close the triangle u -> v -> x -> u
        return (a @ a).T * a

    def vertex_triangles(self) -> np.ndarray:
        a = self.adj.astype(np.int64)
        return np.einsum("ij,ji->i", a, a @ a)


def _majority_adj(w: np.ndarray) -> np.ndarray:
    n = w.shape[0]
    lower = np.triu(np.ones((n, n), dtype=bool), 1)
    adj = (w > w.T) | ((w == w.T) & lower)
    np.fill_diagonal(adj, False)
    return adj


def majority(T: WeightedTournament) -> MajorityTournament:
    return MajorityTournament(_majority_adj(T.weights))


def triangles_through(M: MajorityTournament, arc: tuple[int, int]) -> int:
    u, v = arc
    if not M.adj[u, v]:
        raise ValueError(f"({u}, {v}) is not a majority arc")
    return int(np.count_nonzero(M.adj[v] & M.adj[:, u]))


@dataclass
class KernelResult:
    """Reduced instance plus what is needed to lift its rankings back.

    ``vertex_map[i]`` is the original id of kernel vertex ``i``.  ``shift`` is
    the exact cost paid during reduction, so that
    ``OPT(original) == OPT(kernel) + shift``.
    """

    kernel: WeightedTournament
    shift: int
    vertex_map: tuple[int, ...]
    # (vertex, majority predecessors at removal time), in removal order
    removed: list[tuple[int, frozenset]] = field(default_factory=list)
    paid_arcs: list[tuple[int, int]] = field(default_factory=list)

    def lift(self, ranking: Ranking) -> Ranking:
        """Turn an optimal kernel ranking into an optimal original ranking."""
        order = [self.vertex_map[v] for v in ranking.order]
        for v, preds in reversed(self.removed):
            order = ([x for x in order if x in preds] + [v]
                     + [x for x in order if x not in preds])
        return Ranking(order)


def kernelize(T: WeightedTournament, U: int) -> KernelResult:
    """Apply both reduction rules exhaustively.

    ``U`` is an integer cost in units of ``1/T.denom`` with ``U >= OPT``.
    Every payment is forced on all optimal rankings, so the shift never
    exceeds the optimum; a shift above ``U`` proves the bound was too small
    and raises :class:`InstanceError` (without this check rule 2 could keep
    reversing the same cycle).
    """
    D = T.denom
    w = np.array(T.weights, dtype=np.int64)
    alive = list(range(T.n))
    shift = 0
    removed: list[tuple[int, frozenset]] = []
    paid: list[tuple[int, int]] = []

    while True:
        sub = w[np.ix_(alive, alive)]
        M = MajorityTournament(_majority_adj(sub))

        # rule 2: "more than 2U" triangles, compared exactly as count * D > 2U
        tri = M.triangle_counts()
        over = np.argwhere(M.adj & (tri * D > 2 * U))
        if len(over):
            for i, j in over:
                u, v = alive[i], alive[j]
                shift += int(w[u, v])
                w[u, v] = 0
                w[v, u] = D
                paid.append((u, v))
            if shift > U:
                raise InstanceError(f"bound U={U} is below the optimum")
            continue

        # rule 1: vertices in no triangle
        free = np.flatnonzero(M.vertex_triangles() == 0)
        if len(free) == 0:
            break
        for i in free:
            v = alive[i]
            preds = frozenset(alive[k] for k in np.flatnonzero(M.adj[:, i]))
            others = [alive[k] for k in range(len(alive)) if k != i]
            shift += int(np.minimum(w[v, others], w[others, v]).sum())
            removed.append((v, preds))
        drop = {alive[i] for i in free}
        # vertices removed together never share a triangle, but each one's
        # minority weights towards the others were counted twice above
        drop_list = sorted(drop)
        for a_i, a in enumerate(drop_list):
            for b in drop_list[a_i + 1:]:
                shift -= int(min(w[a, b], w[b, a]))
        alive = [v for v in alive if v not in drop]

    kernel = WeightedTournament(w[np.ix_(alive, alive)], D,
                                [T.names[v] for v in alive])
    return KernelResult(kernel, shift, tuple(alive), removed, paid)

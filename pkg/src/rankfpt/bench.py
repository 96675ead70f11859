"""Scaling sweeps over planted instances, written as CSV."""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .betweenness import solve_betweenness
from .fast import solve_fast
from .generators import bt_flips, fast_flips

__all__ = ["HEADER", "BenchRow", "run_one", "sweep", "write_csv", "bt_psi_ratio"]

HEADER = ("problem", "n", "k", "opt_num", "opt_den", "psi", "dp_states", "millis")


@dataclass(frozen=True)
class BenchRow:
    problem: str
    n: int
    k: int
    opt_num: int
    opt_den: int
    psi: int
    dp_states: int
    millis: int
    seed: int = 0
    seed_cost: int = 0
    kernel_size: int = 0

    def csv_fields(self) -> tuple:
        return tuple(getattr(self, f) for f in HEADER)


def run_one(job: tuple[str, int, int, int]) -> BenchRow:
    problem, n, k, seed = job
    t0 = time.perf_counter()
    if problem == "fast":
        rep = solve_fast(fast_flips(n, k, seed))
    elif problem == "bt":
        rep = solve_betweenness(bt_flips(n, k, seed), seed=seed)
    else:
        raise ValueError(f"unknown problem {problem!r}")
    millis = int(round((time.perf_counter() - t0) * 1000))
    return BenchRow(problem, n, k, rep.cost, rep.denom, rep.psi, rep.dp_states, millis,
                    seed, rep.seed_cost, rep.kernel_size)


def sweep(problem: str, ns: Sequence[int], ks: Sequence[int], seeds: Iterable[int],
          workers: int = 1) -> list[BenchRow]:
    """One row per ``(n, k, seed)``; row order is independent of ``workers``."""
    jobs = [(problem, n, k, s) for n in ns for k in ks for s in seeds]
    if workers <= 1:
        return [run_one(j) for j in jobs]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(run_one, jobs))


def write_csv(rows: Iterable[BenchRow], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow(r.csv_fields())


def bt_psi_ratio(row: BenchRow) -> float:
    """``psi / sqrt(C(seed)/n)``, the quantity bounded by a constant for betweenness."""
    if row.seed_cost == 0:
        return 0.0
    return row.psi / math.sqrt(row.seed_cost / row.n)

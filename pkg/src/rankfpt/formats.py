"""Text formats for tournaments, vote profiles and betweenness instances.

FAST::

    fast <n> <D>
    w <u> <v> <numerator>      # one line per unordered pair, w[v][u] = D - numerator

or, unweighted (``D = 1``)::

    tour <n>
    <u> <v>                    # arc u -> v, one line per pair

Votes: one vote per line, candidate names separated by whitespace, most
preferred first.

Betweenness::

    bt <n>
    <u> <v> <w> <m>            # one line per triple, m is the designated middle

Vertex names are arbitrary tokens; ids follow first appearance.  ``#``
starts a comment everywhere.
"""

from __future__ import annotations

import math
from itertools import combinations
from pathlib import Path

import numpy as np

from .betweenness import BetweennessInstance
from .core import InstanceError, WeightedTournament
from .kra import VoteProfile

__all__ = ["ParseError", "parse_fast", "format_fast", "parse_votes", "format_votes",
           "parse_bt", "format_bt", "read_any", "detect_kind"]


class ParseError(InstanceError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", no) from None


class _Names:
    def __init__(self, n: int):
        self.n = n
        self.ids: dict[str, int] = {}

    def __call__(self, tok: str, no: int) -> int:
        i = self.ids.get(tok)
        if i is None:
            if len(self.ids) == self.n:
                raise ParseError(f"more than {self.n} distinct vertices ({tok!r})", no)
            i = self.ids[tok] = len(self.ids)
        return i

    def finish(self) -> list[str]:
        names = list(self.ids)
        if len(names) < self.n:
            if names:
                raise ParseError(f"only {len(names)} of {self.n} vertices appear")
            names = [f"v{i + 1}" for i in range(self.n)]
        return names


def parse_fast(text: str) -> WeightedTournament:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty file") from None
    if head[0] == "fast" and len(head) == 3:
        n, D = _int(head[1], no, "n"), _int(head[2], no, "D")
        weighted = True
    elif head[0] == "tour" and len(head) == 2:
        n, D = _int(head[1], no, "n"), 1
        weighted = False
    else:
        raise ParseError("expected 'fast <n> <D>' or 'tour <n>'", no)
    if n < 0 or D <= 0:
        raise ParseError("n must be >= 0 and D > 0", no)
    names = _Names(n)
    w = np.zeros((n, n), dtype=np.int64)
    seen: set[tuple[int, int]] = set()
    for no, tok in it:
        if weighted:
            if len(tok) != 4 or tok[0] != "w":
                raise ParseError("expected 'w <u> <v> <numerator>'", no)
            u, v, num = names(tok[1], no), names(tok[2], no), _int(tok[3], no, "weight")
            if not 0 <= num <= D:
                raise ParseError(f"weight {num} outside 0..{D}", no)
        else:
            if len(tok) != 2:
                raise ParseError("expected '<u> <v>'", no)
            u, v, num = names(tok[0], no), names(tok[1], no), 1
        if u == v:
            raise ParseError("self pair", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError("pair given twice", no)
        seen.add(key)
        w[u, v] = num
        w[v, u] = D - num
    labels = names.finish()
    if len(seen) != n * (n - 1) // 2:
        missing = next(p for p in combinations(range(n), 2) if p not in seen)
        raise ParseError(f"missing pair {labels[missing[0]]} {labels[missing[1]]}")
    return WeightedTournament(w, D, labels)


def format_fast(T: WeightedTournament) -> str:
    out = [f"fast {T.n} {T.denom}"]
    for u, v in combinations(range(T.n), 2):
        out.append(f"w {T.names[u]} {T.names[v]} {T.w(u, v)}")
    return "\n".join(out) + "\n"


def parse_votes(text: str) -> VoteProfile:
    votes = list(_lines(text))
    if not votes:
        raise ParseError("no votes")
    candidates = votes[0][1]
    if len(set(candidates)) != len(candidates):
        raise ParseError("repeated candidate", votes[0][0])
    known = set(candidates)
    for no, tok in votes[1:]:
        for name in tok:
            if name not in known:
                raise ParseError(f"unknown candidate {name!r}", no)
        if len(tok) != len(candidates) or len(set(tok)) != len(tok):
            raise ParseError("vote is not a strict ranking of all candidates", no)
    return VoteProfile(candidates, [tok for _, tok in votes])


def format_votes(P: VoteProfile) -> str:
    return "".join(" ".join(P.candidates[v] for v in vote.order) + "\n" for vote in P.votes)


def parse_bt(text: str) -> BetweennessInstance:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty file") from None
    if head[0] != "bt" or len(head) != 2:
        raise ParseError("expected 'bt <n>'", no)
    n = _int(head[1], no, "n")
    if n < 0:
        raise ParseError("n must be >= 0", no)
    names = _Names(n)
    mids: dict[tuple[int, int, int], int] = {}
    for no, tok in it:
        if len(tok) != 4:
            raise ParseError("expected '<u> <v> <w> <m>'", no)
        t = tuple(names(x, no) for x in tok[:3])
        if len(set(t)) != 3:
            raise ParseError("triple repeats a vertex", no)
        if tok[3] not in tok[:3]:
            raise ParseError(f"middle {tok[3]!r} is not in the triple", no)
        key = tuple(sorted(t))
        if key in mids:
            raise ParseError("triple given twice", no)
        mids[key] = names(tok[3], no)
    labels = names.finish()
    if len(mids) != math.comb(n, 3):
        missing = next(t for t in combinations(range(n), 3) if t not in mids)
        raise ParseError("missing triple " + " ".join(labels[x] for x in missing))
    return BetweennessInstance(n, mids, labels)


def format_bt(B: BetweennessInstance) -> str:
    out = [f"bt {B.n}"]
    for t in combinations(range(B.n), 3):
        out.append(" ".join(B.names[x] for x in t) + " " + B.names[B.middle(*t)])
    return "\n".join(out) + "\n"


def detect_kind(text: str) -> str:
    for _, tok in _lines(text):
        if tok[0] in ("fast", "tour"):
            return "fast"
        if tok[0] == "bt" and len(tok) == 2:
            try:
                int(tok[1])
                return "bt"
            except ValueError:
                pass
        return "votes"
    raise ParseError("empty file")


def read_any(path):
    text = Path(path).read_text()
    kind = detect_kind(text)
    parser = {"fast": parse_fast, "bt": parse_bt, "votes": parse_votes}[kind]
    return kind, parser(text)

"""Segments and multisegments over ``Z/e`` (over ``Z`` when ``e == 0``).

A segment is a pair ``(start, length)``; its support is the run of residues
``start, start + 1, ..., start + length - 1``.  Text form of a multisegment:
``"(0,2)+(1,1)"``, with ``"0"`` for the empty one.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from itertools import accumulate

__all__ = [
    "Segment",
    "Multisegment",
    "is_aperiodic",
    "preceq",
    "enumerate_multisegments",
    "support_of",
]


class Segment(tuple):
    def __new__(cls, start: int, length: int, e: int = 0):
        if length < 1:
            raise ValueError("segment length must be >= 1")
        if e < 0:
            raise ValueError("e must be >= 0")
        start = start % e if e else int(start)
        return super().__new__(cls, (start, int(length)))

    @property
    def start(self) -> int:
        return self[0]

    @property
    def length(self) -> int:
        return self[1]

    def residues(self, e: int) -> list[int]:
        return [(self.start + k) % e if e else self.start + k for k in range(self.length)]

    def __str__(self):
        return f"({self.start},{self.length})"


class Multisegment:
    """A finite multiset of segments with its period ``e``.

    Segments are kept in canonical order: longest first, then by start.
    """

    __slots__ = ("segments", "e")

    def __init__(self, segments=(), e: int = 0):
        segs = [Segment(s[0], s[1], e) for s in segments]
        self.segments = tuple(sorted(segs, key=lambda s: (-s.length, s.start)))
        self.e = e

    @classmethod
    def parse(cls, text: str, e: int = 0) -> "Multisegment":
        text = text.strip()
        if text in ("", "0"):
            return cls((), e)
        pairs = re.findall(r"\(\s*(-?\d+)\s*,\s*(\d+)\s*\)", text)
        if not pairs or re.sub(r"\(\s*-?\d+\s*,\s*\d+\s*\)|\+|\s", "", text):
            raise ValueError(f"cannot parse multisegment {text!r}")
        return cls([(int(a), int(n)) for a, n in pairs], e)

    @property
    def weight(self) -> int:
        return sum(s.length for s in self.segments)

    def lengths(self) -> tuple[int, ...]:
        return tuple(s.length for s in self.segments)

    def support(self) -> Counter:
        c = Counter()
        for s in self.segments:
            c.update(s.residues(self.e))
        return c

    def shift(self, k: int = 1) -> "Multisegment":
        return Multisegment([(s.start + k, s.length) for s in self.segments], self.e)

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __eq__(self, other):
        return isinstance(other, Multisegment) and (self.segments, self.e) == (other.segments, other.e)

    def __hash__(self):
        return hash((self.segments, self.e))

    def sort_key(self):
        return (tuple(-n for n in self.lengths()), self.segments)

    def __str__(self):
        return "+".join(map(str, self.segments)) if self.segments else "0"

    def __repr__(self):
        return f"Multisegment({self}, e={self.e})"

    def to_json(self) -> str:
        return json.dumps({"e": self.e, "segments": [list(s) for s in self.segments]})

    @classmethod
    def from_json(cls, text: str) -> "Multisegment":
        data = json.loads(text)
        return cls([tuple(s) for s in data["segments"]], int(data["e"]))


def support_of(residues, e: int) -> Counter:
    return Counter(r % e if e else r for r in residues)


def is_aperiodic(mu: Multisegment) -> bool:
    """No length carries a segment at every residue."""
    if mu.e == 0:
        return True
    starts: dict[int, set] = {}
    for s in mu:
        starts.setdefault(s.length, set()).add(s.start)
    return all(len(v) < mu.e for v in starts.values())


def preceq(mu: Multisegment, nu: Multisegment) -> bool:
    """Dominance of decreasingly sorted length profiles."""
    if mu.weight != nu.weight:
        raise ValueError("multisegments of different weights")
    a, b = list(mu.lengths()), list(nu.lengths())
    k = max(len(a), len(b))
    a += [0] * (k - len(a))
    b += [0] * (k - len(b))
    return all(x <= y for x, y in zip(accumulate(a), accumulate(b)))


def enumerate_multisegments(
    n: int,
    e: int,
    support=None,
    aperiodic_only: bool = False,
    starts=None,
) -> list[Multisegment]:
    """All multisegments of weight ``n``, coarsest first.

    ``support`` (an iterable of residues, repeats allowed) keeps only those
    whose support multiset equals it.  With ``e == 0`` either ``support`` or
    an explicit window ``starts`` of allowed start values is required.
    """
    if n < 0:
        raise ValueError("weight must be >= 0")
    target = support_of(support, e) if support is not None else None
    if target is not None and sum(target.values()) != n:
        return []
    if starts is not None:
        start_set = sorted({(a % e) if e else a for a in starts})
    elif target is not None:
        start_set = sorted(target)
    elif e:
        start_set = list(range(e))
    else:
        raise ValueError("e = 0 needs a support or a window of start values")
    segs = sorted(
        (Segment(a, length, e) for a in start_set for length in range(1, n + 1)),
        key=lambda s: (-s.length, s.start),
    )
    if target is not None:
        segs = [s for s in segs if not Counter(s.residues(e)) - target]

    out = []

    def rec(idx, left, chosen, remaining):
        if left == 0:
            if remaining is None or not +remaining:
                out.append(Multisegment(chosen, e))
            return
        for k in range(idx, len(segs)):
            s = segs[k]
            if s.length > left:
                continue
            if remaining is not None:
                need = Counter(s.residues(e))
                if need - remaining:
                    continue
                rec(k, left - s.length, chosen + [s], remaining - need)
            else:
                rec(k, left - s.length, chosen + [s], None)

    rec(0, n, [], target)
    if aperiodic_only:
        out = [m for m in out if is_aperiodic(m)]
    return sorted(set(out), key=Multisegment.sort_key)

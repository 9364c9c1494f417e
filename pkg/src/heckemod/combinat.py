"""Type A combinatorics: permutations, compositions, parabolic subgroups and
minimal-length coset representatives.

Permutations are stored in one-line notation with 1-based images and compose
as maps: ``(v * w)(i) = v(w(i))``.  ``s_i`` swaps ``i`` and ``i + 1``.

Coset convention: every ``w`` factors uniquely as ``w = d * v`` with ``v`` in
the parabolic subgroup ``W_alpha`` and ``length(w) = length(d) + length(v)``;
:func:`distinguished_reps` returns the ``d``.  These are exactly the
permutations without descents inside an ``alpha``-block.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

__all__ = [
    "Permutation",
    "Composition",
    "compositions_of",
    "distinguished_reps",
    "parabolic_elements",
    "factor_coset",
    "multinomial",
    "all_permutations",
]


class Permutation(tuple):
    """A permutation of ``{1..n}`` in one-line notation."""

    def __new__(cls, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        if not 1 <= i < n:
            raise ValueError(f"s_{i} is not a simple reflection of S_{n}")
        img = list(range(1, n + 1))
        img[i - 1], img[i] = img[i], img[i - 1]
        return cls(img)

    @classmethod
    def from_word(cls, word, n: int) -> "Permutation":
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple(i, n)
        return w

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(int(x) for x in text.strip().strip("[]").split(",") if x.strip())

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other) != len(self):
            raise ValueError("permutations of different degrees")
        return Permutation(self[j - 1] for j in other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self, 1):
            inv[j - 1] = i
        return Permutation(inv)

    def length(self) -> int:
        return sum(1 for i, j in itertools.combinations(range(len(self)), 2) if self[i] > self[j])

    def right_descents(self) -> list[int]:
        return [i for i in range(1, len(self)) if self[i - 1] > self[i]]

    def left_descents(self) -> list[int]:
        return self.inverse().right_descents()

    def reduced_word(self) -> list[int]:
        return list(_reduced_word(self))

    def act(self, vec):
        """Left action on exponent vectors: entry ``k`` moves to slot ``w(k)``."""
        out = [0] * len(vec)
        for k, x in enumerate(vec):
            out[self[k] - 1] = x
        return tuple(out)

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"

    def __repr__(self):
        return f"Permutation({list(self)})"


@lru_cache(maxsize=None)
def _reduced_word(w: Permutation) -> tuple[int, ...]:
    desc = w.right_descents()
    if not desc:
        return ()
    i = desc[0]
    return _reduced_word(w * Permutation.simple(i, len(w))) + (i,)


class Composition(tuple):
    """A composition ``(n_1, ..., n_r)`` of ``n`` with every part >= 1."""

    def __new__(cls, parts):
        parts = tuple(int(x) for x in parts)
        if not parts or any(x < 1 for x in parts):
            raise ValueError(f"not a composition: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        return cls(int(x) for x in text.strip().strip("()").split(",") if x.strip())

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def r(self) -> int:
        return len(self)

    def boundaries(self) -> set[int]:
        """Indices ``i`` whose ``S_i`` crosses two blocks."""
        return set(itertools.accumulate(self[:-1]))

    def generators(self) -> list[int]:
        """Indices of the ``S_i`` lying in the parabolic subalgebra."""
        cut = self.boundaries()
        return [i for i in range(1, self.n) if i not in cut]

    def blocks(self) -> list[range]:
        out, start = [], 1
        for part in self:
            out.append(range(start, start + part))
            start += part
        return out

    def reversed(self) -> "Composition":
        return Composition(self[::-1])

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self):
        return f"Composition({list(self)})"


def compositions_of(n: int) -> list[Composition]:
    """All ``2^(n-1)`` compositions of ``n``, lexicographic in their parts."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(Composition(parts))
    return sorted(out)


def multinomial(parts) -> int:
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return tuple(sorted(perms, key=lambda w: (w.length(), tuple(w))))


@lru_cache(maxsize=None)
def distinguished_reps(alpha: Composition) -> tuple[Permutation, ...]:
    """Minimal-length representatives of ``W / W_alpha``, by (length, one-line)."""
    alpha = Composition(alpha)
    inside = alpha.generators()
    reps = [w for w in all_permutations(alpha.n) if all(w[i - 1] < w[i] for i in inside)]
    return tuple(reps)


@lru_cache(maxsize=None)
def parabolic_elements(alpha: Composition) -> tuple[Permutation, ...]:
    alpha = Composition(alpha)
    inside = set(alpha.generators())
    return tuple(w for w in all_permutations(alpha.n) if set(w.reduced_word()) <= inside)


def factor_coset(w: Permutation, alpha: Composition) -> tuple[Permutation, Permutation]:
    """Split ``w = d * v`` with ``d`` distinguished and ``v`` in ``W_alpha``."""
    img = list(w)
    for block in Composition(alpha).blocks():
        pos = [i - 1 for i in block]
        vals = sorted(img[i] for i in pos)
        for i, val in zip(pos, vals):
            img[i] = val
    d = Permutation(img)
    return d, d.inverse() * w

"""Exact coefficient fields: prime fields, their extensions, and the rationals.

Every field hands out *raw* values (``int`` in ``[0, p)`` for a prime field,
:class:`fractions.Fraction` for the rationals, :class:`GFElement` for an
extension) and does arithmetic on them through its methods.  Matrices live in
numpy arrays whose dtype the field picks (``int64`` for small primes, ``object``
otherwise), see :mod:`heckemod.linalg`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "Field",
    "PrimeField",
    "Rationals",
    "ExtensionField",
    "GFElement",
    "QQ",
    "GF",
    "e_invariant",
    "parse_scalar",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface.  Subclasses are immutable and hashable."""

    characteristic: int = 0
    order: int | None = None
    dtype: object = object

    # -- construction ---------------------------------------------------
    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    # -- arithmetic on raw values ----------------------------------------
    def add(self, a, b):
        return self(a + b)

    def sub(self, a, b):
        return self(a - b)

    def mul(self, a, b):
        return self(a * b)

    def neg(self, a):
        return self(-a)

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_finite(self) -> bool:
        return self.order is not None

    # -- arrays ------------------------------------------------------------
    def reduce(self, arr):
        """Bring an array produced by +, -, * back to canonical raw values."""
        return arr

    def array(self, rows) -> np.ndarray:
        data = np.array(rows, dtype=object)
        out = np.empty(data.shape, dtype=self.dtype)
        for idx, val in np.ndenumerate(data):
            out[idx] = self(val)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def scalar_matrix(self, c, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = c
        return out

    def random(self, rng: np.random.Generator):
        raise NotImplementedError

    def random_array(self, rng: np.random.Generator, shape) -> np.ndarray:
        out = np.empty(shape, dtype=self.dtype)
        for idx in np.ndindex(*shape):
            out[idx] = self.random(rng)
        return out

    def elements(self):
        raise TypeError(f"{self} is infinite")

    # -- text ----------------------------------------------------------------
    def parse(self, text: str):
        text = text.strip()
        m = re.fullmatch(r"(.+?)\s+mod\s+(\d+)", text)
        if m:
            if int(m.group(2)) != self.characteristic:
                raise ValueError(f"{text!r} does not live in {self}")
            text = m.group(1)
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self(int(num)), self(int(den)))
        return self(int(text))

    def format(self, a) -> str:
        return str(a)

    def spec(self) -> str:
        """Short machine-readable descriptor (``"7"``, ``"rationals"``, ``"3^2"``)."""
        raise NotImplementedError


class PrimeField(Field):
    """The field with ``p`` elements, values are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        # int64 dot products stay exact while dim * p**2 < 2**63
        self.dtype = np.int64 if p < 2**24 else object

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, x):
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, str):
            return self.parse(x)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def pow(self, a, k):
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(int(a), k, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def reduce(self, arr):
        return arr % self.p

    def random(self, rng):
        return int(rng.integers(0, self.p))

    def random_array(self, rng, shape):
        out = rng.integers(0, self.p, size=shape)
        return out.astype(self.dtype) if self.dtype is not object else out.astype(object)

    def elements(self):
        return list(range(self.p))

    def format(self, a):
        return str(int(a))

    def spec(self):
        return str(self.p)


class Rationals(Field):
    """The rational numbers with :class:`~fractions.Fraction` values."""

    characteristic = 0
    order = None
    dtype = object

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, GFElement):
            raise TypeError("cannot coerce a finite field element into QQ")
        return Fraction(x)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / Fraction(b)

    def random(self, rng):
        # small integers suffice for randomised search over QQ
        return Fraction(int(rng.integers(-3, 4)))

    def format(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def spec(self):
        return "rationals"


class GFElement:
    """Element of ``GF(p^k)`` stored as a coefficient tuple modulo a fixed polynomial."""

    __slots__ = ("field", "c")

    def __init__(self, field: "ExtensionField", coeffs):
        self.field = field
        self.c = tuple(coeffs)

    def _lift(self, other):
        if isinstance(other, GFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        other = self._lift(other)
        p = self.field.p
        return GFElement(self.field, [(a + b) % p for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        other = self._lift(other)
        p = self.field.p
        return GFElement(self.field, [(a - b) % p for a, b in zip(self.c, other.c)])

    def __rsub__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        return self._lift(other) - self

    def __neg__(self):
        p = self.field.p
        return GFElement(self.field, [(-a) % p for a in self.c])

    def __mul__(self, other):
        if isinstance(other, np.ndarray):
            return NotImplemented
        return self.field.mul(self, self._lift(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.c == other.c
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return self.field.format(self)


class ExtensionField(Field):
    """``GF(p^k)`` realised as ``GF(p)[g]/(f)`` for the least monic irreducible ``f``.

    Elements of the prime subfield coerce in as constants, so matrices over
    ``GF(p)`` can be lifted entrywise.
    """

    dtype = object

    def __init__(self, p: int, k: int):
        if not is_prime(p) or k < 1:
            raise ValueError(f"bad extension GF({p}^{k})")
        self.p = p
        self.k = k
        self.characteristic = p
        self.order = p**k
        self.base = PrimeField(p)
        from .polys import least_irreducible

        self.modulus = tuple(least_irreducible(self.base, k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.k) == (self.p, self.k)

    def __hash__(self):
        return hash(("GF", self.p, self.k))

    def __call__(self, x):
        if isinstance(x, GFElement):
            if x.field != self:
                raise TypeError("element of another field")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (list, tuple)):
            coeffs = [int(v) % self.p for v in x] + [0] * self.k
            return GFElement(self, coeffs[: self.k])
        return GFElement(self, [self.base(x)] + [0] * (self.k - 1))

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    prod[i + j] += x * y
        mod = self.modulus  # monic, length k + 1
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for j in range(k + 1):
                    prod[d - k + j] -= c * mod[j]
        return GFElement(self, [v % p for v in prod[:k]])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 2)

    def is_zero(self, a):
        return not any(a.c)

    def random(self, rng):
        return GFElement(self, [int(v) for v in rng.integers(0, self.p, size=self.k)])

    def elements(self):
        out = []
        for idx in np.ndindex(*([self.p] * self.k)):
            out.append(GFElement(self, [int(v) for v in idx]))
        return out

    def generator(self):
        return GFElement(self, [0, 1] + [0] * (self.k - 2))

    def parse(self, text):
        text = text.strip()
        if text.startswith("["):
            return self([int(v) for v in text.strip("[]").split(",") if v.strip()])
        return super().parse(text)

    def format(self, a):
        if not any(a.c[1:]):
            return str(a.c[0])
        return "[" + ",".join(str(v) for v in a.c) + "]"

    def spec(self):
        return f"{self.p}^{self.k}"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> Field:
    return PrimeField(p) if k == 1 else ExtensionField(p, k)


def e_invariant(u, field: Field) -> int:
    """Least ``k >= 2`` with ``1 + u + ... + u^(k-1) == 0`` in ``field``, else 0."""
    u = field(u)
    if field.is_zero(u):
        raise ValueError("the parameter must be nonzero")
    if field.characteristic == 0:
        # u^k = 1 with u != 1 forces u = -1 among rationals
        return 2 if u == -1 else 0
    total = field.one
    power = field.one
    for k in range(2, field.order + 2):
        power = field.mul(power, u)
        total = field.add(total, power)
        if field.is_zero(total):
            return k
    return 0


def parse_scalar(text: str, field: Field | None = None):
    """Parse ``"5"``, ``"-2/3"`` or ``"4 mod 7"``.

    Returns ``(field, value)``.  Without an explicit field, ``"x mod l"`` selects
    ``GF(l)`` and anything else is read as a rational.
    """
    text = text.strip()
    if field is None:
        m = re.fullmatch(r"(.+?)\s+mod\s+(\d+)", text)
        field = GF(int(m.group(2))) if m else QQ
    return field, field.parse(text)

"""Univariate polynomials over a :class:`~heckemod.fields.Field`.

Polynomials are plain lists of raw coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Factorisation over finite
fields is the usual squarefree / distinct-degree / Cantor-Zassenhaus pipeline;
over the rationals it defers to sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from .fields import Field


def trim(F: Field, f):
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def degree(f) -> int:
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    f = list(f) + [F.zero] * (n - len(f))
    g = list(g) + [F.zero] * (n - len(g))
    return trim(F, [F.add(a, b) for a, b in zip(f, g)])


def sub(F, f, g):
    return add(F, f, [F.neg(b) for b in g])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv_lead = F.inv(g[-1])
    q = [F.zero] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        c = F.mul(f[-1], inv_lead)
        shift = len(f) - len(g)
        q[shift] = c
        for j, b in enumerate(g):
            f[shift + j] = F.sub(f[shift + j], F.mul(c, b))
        f = trim(F, f)
    return trim(F, q), f


def monic(F, f):
    if not f:
        return f
    inv_lead = F.inv(f[-1])
    return [F.mul(c, inv_lead) for c in f]


def gcd(F, f, g):
    f, g = trim(F, f), trim(F, g)
    while g:
        f, g = g, divmod_(F, f, g)[1]
    return monic(F, f)


def derivative(F, f):
    return trim(F, [F.mul(F(i), c) for i, c in enumerate(f)][1:])


def powmod(F, base, e: int, modulus):
    result = [F.one]
    base = divmod_(F, base, modulus)[1]
    while e:
        if e & 1:
            result = divmod_(F, mul(F, result, base), modulus)[1]
        base = divmod_(F, mul(F, base, base), modulus)[1]
        e >>= 1
    return result


def evaluate(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root(F, f):
    # in a finite field a -> a^p is bijective with inverse a -> a^(q/p)
    p, q = F.characteristic, F.order
    return [F.pow(f[i], q // p) for i in range(0, len(f), p)]


def _distinct_degree(F, f):
    """Split a monic squarefree ``f`` into (d, product of its degree-d factors)."""
    q = F.order
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    while degree(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, q, f)
        g = gcd(F, f, sub(F, h, x))
        if degree(g) > 0:
            out.append((d, g))
            f = divmod_(F, f, g)[0]
            h = divmod_(F, h, f)[1]
    if degree(f) > 0:
        out.append((degree(f), f))
    return out


def _equal_degree(F, f, d, rng):
    """Cantor-Zassenhaus: split ``f`` (product of degree-``d`` irreducibles)."""
    if degree(f) == d:
        return [monic(F, f)]
    q = F.order
    while True:
        a = trim(F, [F.random(rng) for _ in range(degree(f))])
        if degree(a) < 1:
            continue
        if q % 2:
            b = sub(F, powmod(F, a, (q**d - 1) // 2, f), [F.one])
        else:
            k = (q.bit_length() - 1) * d
            b, t = a, a
            for _ in range(k - 1):
                t = divmod_(F, mul(F, t, t), f)[1]
                b = add(F, b, t)
        g = gcd(F, f, b)
        if 0 < degree(g) < degree(f):
            return _equal_degree(F, g, d, rng) + _equal_degree(F, divmod_(F, f, g)[0], d, rng)


def _finite_factors(F, f, rng):
    f = monic(F, trim(F, f))
    if degree(f) < 1:
        return []
    df = derivative(F, f)
    if not df:
        return _finite_factors(F, _pth_root(F, f), rng)
    g = gcd(F, f, df)
    squarefree = divmod_(F, f, g)[0]
    found = []
    for d, part in _distinct_degree(F, squarefree):
        found.extend(_equal_degree(F, part, d, rng))
    for h in _finite_factors(F, g, rng):
        if h not in found:
            found.append(h)
    return found


def irreducible_factors(F: Field, f, seed: int = 0):
    """Distinct monic irreducible factors of ``f``, sorted by degree."""
    f = trim(F, f)
    if F.is_finite():
        rng = np.random.default_rng(seed)
        facs = _finite_factors(F, f, rng)
    else:
        facs = _rational_factors(f)
    return sorted(facs, key=lambda h: (degree(h), [str(c) for c in h]))


def _rational_factors(f):
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], x, domain="QQ")
    out = []
    for fac, _ in poly.factor_list()[1]:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        lead = coeffs[-1]
        out.append([c / lead for c in coeffs])
    return out


def roots(F: Field, f, seed: int = 0):
    return [F.neg(h[0]) for h in irreducible_factors(F, f, seed) if degree(h) == 1]


def is_irreducible(F: Field, f) -> bool:
    """Rabin's test over a finite field."""
    f = monic(F, trim(F, f))
    n = degree(f)
    if n < 1:
        return False
    q = F.order
    x = [F.zero, F.one]
    primes = [r for r in range(2, n + 1) if n % r == 0 and all(r % s for s in range(2, r))]
    for r in primes:
        h = sub(F, powmod(F, x, q ** (n // r), f), x)
        if degree(gcd(F, f, h)) > 0:
            return False
    h = sub(F, powmod(F, x, q**n, f), x)
    return not divmod_(F, h, f)[1]


def least_irreducible(F: Field, k: int):
    """The lexicographically least monic irreducible polynomial of degree ``k``."""
    for tail in product(range(F.order), repeat=k):
        f = [F(c) for c in reversed(tail)] + [F.one]
        if is_irreducible(F, f):
            return f
    raise ValueError("no irreducible polynomial found")  # cannot happen


def matrix_poly(F: Field, f, A: np.ndarray) -> np.ndarray:
    """Evaluate ``f(A)`` by Horner's rule."""
    n = A.shape[0]
    out = F.zeros((n, n))
    for c in reversed(f):
        out = F.reduce(out @ A)
        for i in range(n):
            out[i, i] = F.add(out[i, i], c)
    return out

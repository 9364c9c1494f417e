"""Finite and affine Hecke algebras of type A in the normal form ``X^a T_w``.

The finite algebra ``H(n, u)`` is generated by ``S_1..S_{n-1}`` subject to
``(S_i + 1)(S_i - u) = 0`` and the braid relations.  The affine algebra adds
commuting invertible ``X_1..X_n`` with ``X_j S_i = S_i X_j`` for
``j not in {i, i+1}`` and ``S_i X_i S_i = u X_{i+1}``.

Products are computed by pushing each ``S_i`` leftwards through a Laurent
monomial one degree at a time, using

    S_i X_i       = X_{i+1} S_i - (u-1) X_{i+1}
    S_i X_{i+1}   = X_i S_i + (u-1) X_{i+1}
    S_i X_i^-1    = X_{i+1}^-1 S_i + (u-1) X_i^-1
    S_i X_{i+1}^-1 = X_i^-1 S_i - (u-1) X_i^-1
"""

from __future__ import annotations

import re
from collections import defaultdict
from functools import lru_cache

import numpy as np

from .combinat import Composition, Permutation, all_permutations, distinguished_reps, factor_coset
from .fields import Field

__all__ = ["HeckeAlgebra", "HeckeElement", "hecke_algebra", "parabolic_decompose", "tau"]

FINITE = "finite"
AFFINE = "affine"


class HeckeAlgebra:
    """``H(n, u)`` (``flavor="finite"``) or its affine extension (``"affine"``).

    Use :func:`hecke_algebra` to obtain shared instances; elements of two
    algebras with the same ``(n, u, field, flavor)`` are then interchangeable.
    """

    def __init__(self, n: int, u, field: Field, flavor: str = AFFINE):
        if n < 1:
            raise ValueError("n must be >= 1")
        if flavor not in (FINITE, AFFINE):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.n = n
        self.field = field
        self.u = field(u)
        if field.is_zero(self.u):
            raise ValueError("the parameter u must be nonzero")
        self.flavor = flavor
        self.affine = flavor == AFFINE
        self._um1 = field.sub(self.u, field.one)
        self._moves = lru_cache(maxsize=None)(self._moves_uncached)
        self._tau_T: dict[Permutation, HeckeElement] = {}

    # -- identity ---------------------------------------------------------------
    def key(self):
        return (self.n, self.field, self.u, self.flavor)

    def __eq__(self, other):
        return isinstance(other, HeckeAlgebra) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        name = "H~" if self.affine else "H"
        return f"{name}({self.n}, u={self.field.format(self.u)}, {self.field!r})"

    # -- constructors -------------------------------------------------------------
    def _zero_exp(self):
        return (0,) * self.n if self.affine else ()

    def element(self, terms) -> "HeckeElement":
        return HeckeElement(self, terms)

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def one(self) -> "HeckeElement":
        return self.scalar(self.field.one)

    def scalar(self, c) -> "HeckeElement":
        return self.monomial(self._zero_exp(), Permutation.identity(self.n), c)

    def monomial(self, exps, w, c=None) -> "HeckeElement":
        c = self.field.one if c is None else self.field(c)
        exps = tuple(exps) if self.affine else ()
        if self.affine and len(exps) != self.n:
            raise ValueError("exponent vector has the wrong length")
        return HeckeElement(self, {(exps, Permutation(w)): c})

    def T(self, w) -> "HeckeElement":
        return self.monomial(self._zero_exp(), Permutation(w))

    def S(self, i: int) -> "HeckeElement":
        return self.T(Permutation.simple(i, self.n))

    def X(self, j: int, power: int = 1) -> "HeckeElement":
        if not self.affine:
            raise ValueError("the finite algebra has no X generators")
        if not 1 <= j <= self.n:
            raise ValueError(f"X_{j} out of range")
        exps = [0] * self.n
        exps[j - 1] = power
        return self.monomial(exps, Permutation.identity(self.n))

    def generators(self) -> dict[str, "HeckeElement"]:
        gens = {f"S{i}": self.S(i) for i in range(1, self.n)}
        if self.affine:
            gens.update({f"X{j}": self.X(j) for j in range(1, self.n + 1)})
        return gens

    # -- multiplication -------------------------------------------------------------
    def _moves_uncached(self, i: int, a: int, b: int):
        """``S_i X_i^a X_{i+1}^b`` as ``{(a', b', keeps_S): coeff}``."""
        F = self.field
        um1 = self._um1
        out: dict = defaultdict(lambda: F.zero)

        def put(key, c):
            out[key] = F.add(out[key], c)

        if a == 0 and b == 0:
            put((0, 0, True), F.one)
        elif a > 0:
            for (x, y, k), c in self._moves(i, a - 1, b).items():
                put((x, y + 1, k), c)
            put((a - 1, b + 1, False), F.neg(um1))
        elif a < 0:
            for (x, y, k), c in self._moves(i, a + 1, b).items():
                put((x, y - 1, k), c)
            put((a, b, False), um1)
        elif b > 0:
            for (x, y, k), c in self._moves(i, 0, b - 1).items():
                put((x + 1, y, k), c)
            put((0, b, False), um1)
        else:
            for (x, y, k), c in self._moves(i, 0, b + 1).items():
                put((x - 1, y, k), c)
            put((-1, b + 1, False), F.neg(um1))
        return {key: c for key, c in out.items() if not F.is_zero(c)}

    def _left_S(self, i: int, terms: dict) -> dict:
        """Left multiplication of a normal-form term dict by ``S_i``."""
        F = self.field
        n = self.n
        s = Permutation.simple(i, n)
        out: dict = defaultdict(lambda: F.zero)

        def put(key, c):
            out[key] = F.add(out[key], c)

        for (exps, v), c in terms.items():
            up = (s * v).length() > v.length()
            if self.affine:
                moves = self._moves(i, exps[i - 1], exps[i])
            else:
                moves = {(0, 0, True): F.one}
            for (a2, b2, keep), mc in moves.items():
                cc = F.mul(c, mc)
                if self.affine:
                    e2 = list(exps)
                    e2[i - 1], e2[i] = a2, b2
                    e2 = tuple(e2)
                else:
                    e2 = ()
                if not keep:
                    put((e2, v), cc)
                elif up:
                    put((e2, s * v), cc)
                else:
                    put((e2, v), F.mul(cc, self._um1))
                    put((e2, s * v), F.mul(cc, self.u))
        return {k: c for k, c in out.items() if not F.is_zero(c)}

    def multiply(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        if a.algebra != self or b.algebra != self:
            raise ValueError("elements of different algebras")
        F = self.field
        by_w: dict = defaultdict(list)
        for (exps, w), c in a.terms.items():
            by_w[w].append((exps, c))
        out: dict = defaultdict(lambda: F.zero)
        for w, prefixes in by_w.items():
            tb = dict(b.terms)
            for i in reversed(w.reduced_word()):
                tb = self._left_S(i, tb)
            for exps, c in prefixes:
                for (e2, v), c2 in tb.items():
                    key = (tuple(x + y for x, y in zip(exps, e2)), v)
                    out[key] = F.add(out[key], F.mul(c, c2))
        return HeckeElement(self, out)

    # -- the involution -------------------------------------------------------------
    def tau_generator(self, i: int) -> "HeckeElement":
        """``tau(S_i) = -S_{n-i} + (u - 1)``."""
        return self.scalar(self._um1) - self.S(self.n - i)

    def tau(self, x: "HeckeElement") -> "HeckeElement":
        out = self.zero()
        for (exps, w), c in x.terms.items():
            tw = self._tau_T.get(w)
            if tw is None:
                tw = self.one()
                for i in w.reduced_word():
                    tw = tw * self.tau_generator(i)
                self._tau_T[w] = tw
            mono = self.monomial(tuple(reversed(exps)), Permutation.identity(self.n), c)
            out = out + mono * tw
        return out

    # -- parsing --------------------------------------------------------------------------
    def parse(self, text: str) -> "HeckeElement":
        return _Parser(self, text).parse()

    # -- relations ------------------------------------------------------------------------
    def relations(self) -> list[tuple[str, "HeckeElement"]]:
        """Defining relations as elements that must vanish."""
        n, u = self.n, self.u
        one = self.one()
        rels = []
        for i in range(1, n):
            S = self.S(i)
            rels.append((f"quadratic S{i}", (S + one) * (S - self.scalar(u))))
        for i in range(1, n):
            for j in range(i + 2, n):
                rels.append((f"commute S{i} S{j}", self.S(i) * self.S(j) - self.S(j) * self.S(i)))
        for i in range(1, n - 1):
            a, b = self.S(i), self.S(i + 1)
            rels.append((f"braid S{i} S{i + 1}", a * b * a - b * a * b))
        if self.affine:
            for i in range(1, n + 1):
                rels.append((f"invert X{i}", self.X(i) * self.X(i, -1) - one))
                for j in range(i + 1, n + 1):
                    rels.append((f"commute X{i} X{j}", self.X(i) * self.X(j) - self.X(j) * self.X(i)))
            for i in range(1, n):
                for j in range(1, n + 1):
                    if j not in (i, i + 1):
                        rels.append((f"commute X{j} S{i}", self.X(j) * self.S(i) - self.S(i) * self.X(j)))
                S = self.S(i)
                rels.append((f"cross S{i} X{i}", S * self.X(i) * S - self.X(i + 1).scale(u)))
        return rels

    def random_element(self, rng: np.random.Generator, terms: int = 3, exp_range: int = 2) -> "HeckeElement":
        F = self.field
        perms = all_permutations(self.n)
        out = self.zero()
        for _ in range(terms):
            w = perms[int(rng.integers(len(perms)))]
            exps = tuple(int(x) for x in rng.integers(-exp_range, exp_range + 1, size=self.n)) if self.affine else ()
            out = out + self.monomial(exps, w, F.random(rng))
        return out


@lru_cache(maxsize=None)
def hecke_algebra(n: int, u, field: Field, flavor: str = AFFINE) -> HeckeAlgebra:
    return HeckeAlgebra(n, u, field, flavor)


class HeckeElement:
    """A finite combination of basis words ``X^a T_w`` (zero coefficients dropped)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeckeAlgebra, terms):
        F = algebra.field
        self.algebra = algebra
        self.terms = {
            (tuple(e), Permutation(w)): F(c) for (e, w), c in dict(terms).items() if not F.is_zero(F(c))
        }

    def _check(self, other):
        if not isinstance(other, HeckeElement):
            return self.algebra.scalar(other)
        if other.algebra != self.algebra:
            raise ValueError("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        F = self.algebra.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = F.add(out.get(k, F.zero), c)
        return HeckeElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.algebra.field
        return HeckeElement(self.algebra, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        return self.algebra.multiply(self, self._check(other))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "HeckeElement":
        F = self.algebra.field
        c = F(c)
        return HeckeElement(self.algebra, {k: F.mul(c, v) for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra == other.algebra and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], tuple(kv[0][1])))

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.algebra.field
        pieces = []
        for (exps, w), c in self.sorted_terms():
            factors = [f"X{j}^{e}" if e != 1 else f"X{j}" for j, e in enumerate(exps, 1) if e]
            if w != Permutation.identity(len(w)):
                factors.append(f"T{w}")
            coeff = F.format(c)
            if not factors:
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append("*".join(factors))
            else:
                pieces.append(f"{coeff}*" + "*".join(factors))
        return " + ".join(pieces)

    def __repr__(self):
        return f"<{self.algebra!r}: {self}>"


def tau(x: HeckeElement) -> HeckeElement:
    return x.algebra.tau(x)


def parabolic_decompose(x: HeckeElement, alpha) -> dict[Permutation, HeckeElement]:
    """Write ``x = sum_d T_d h_d`` with ``h_d`` in the parabolic subalgebra of ``alpha``.

    Every distinguished representative ``d`` appears as a key (with a zero
    element when it does not contribute).
    """
    A = x.algebra
    alpha = Composition(alpha)
    if alpha.n != A.n:
        raise ValueError(f"{alpha} is not a composition of {A.n}")
    F = A.field
    reps = distinguished_reps(alpha)
    parts: dict = {d: {} for d in reps}
    rest = dict(x.terms)
    while rest:
        key = max(rest, key=lambda k: (k[1].length(), tuple(k[1]), k[0]))
        exps, w = key
        c = rest[key]
        d, v = factor_coset(w, alpha)
        base = d.inverse().act(exps) if A.affine else ()
        piece = A.monomial(base, v, c)
        parts[d][(base, v)] = F.add(parts[d].get((base, v), F.zero), c)
        correction = A.multiply(A.T(d), piece)
        for k, cc in correction.terms.items():
            val = F.sub(rest.get(k, F.zero), cc)
            if F.is_zero(val):
                rest.pop(k, None)
            else:
                rest[k] = val
        if key in rest:
            raise ArithmeticError("parabolic decomposition failed to make progress")
    return {d: HeckeElement(A, parts[d]) for d in reps}


_TOKEN = re.compile(r"\s*(?:(\d+)|(T\[[\d,\s]*\])|([SX])(\d+)|(u)|(\^)|([-+*/()])|(\[[\d,\s]*\]))")


class _Parser:
    """Recursive descent for ``u*X1^2*T[2,1] + 3`` style input."""

    def __init__(self, algebra: HeckeAlgebra, text: str):
        self.A = algebra
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text[pos:]!r}")
            pos = m.end()
            if m.group(1):
                self.tokens.append(("num", int(m.group(1))))
            elif m.group(2):
                self.tokens.append(("T", Permutation.parse(m.group(2)[1:])))
            elif m.group(3):
                self.tokens.append((m.group(3), int(m.group(4))))
            elif m.group(5):
                self.tokens.append(("u", None))
            elif m.group(6):
                self.tokens.append(("^", None))
            elif m.group(7):
                self.tokens.append((m.group(7), None))
            else:
                self.tokens.append(("elt", algebra.field.parse(m.group(8))))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ValueError("empty expression")
        out = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()}")
        return out

    def expr(self):
        out = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            if op == "*":
                out = out * rhs
            else:
                c = _as_scalar(self.A, rhs)
                out = out.scale(self.A.field.inv(c))
        return out

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            k *= sign
            if k < 0:
                if base.is_zero() or len(base.terms) != 1:
                    raise ValueError("only monomials can carry negative exponents")
                (exps, w), c = next(iter(base.terms.items()))
                if w != Permutation.identity(self.A.n) or sum(1 for e in exps if e) > 1:
                    raise ValueError("negative exponents are allowed on X_j and scalars only")
                F = self.A.field
                return self.A.monomial(tuple(e * k for e in exps), w, F.pow(c, k))
            out = self.A.one()
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self):
        kind, val = self.take()
        A = self.A
        if kind == "num":
            return A.scalar(val)
        if kind == "u":
            return A.scalar(A.u)
        if kind == "elt":
            return A.scalar(val)
        if kind == "T":
            if len(val) != A.n:
                raise ValueError(f"T{val} is not in S_{A.n}")
            return A.T(val)
        if kind == "S":
            return A.S(val)
        if kind == "X":
            return A.X(val)
        if kind == "(":
            out = self.expr()
            if self.take()[0] != ")":
                raise ValueError("missing ')'")
            return out
        raise ValueError(f"unexpected token {kind!r}")


def _as_scalar(A: HeckeAlgebra, x: HeckeElement):
    if x.is_zero():
        raise ZeroDivisionError("division by zero")
    if set(x.terms) != {(A._zero_exp(), Permutation.identity(A.n))}:
        raise ValueError("can only divide by scalars")
    return next(iter(x.terms.values()))

"""Composition factors by the randomised MeatAxe, and a registry of simples.

The splitting search follows Holt and Rees: pick a random element ``A`` of
the algebra spanned by the action matrices, factor its characteristic
polynomial, and spin a null vector of ``f(A)`` for an irreducible factor
``f``.  A proper spin splits the module.  If neither the vector nor a dual
null vector spins to something proper and ``deg f`` equals the nullity, the
module is irreducible (Norton's criterion).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg, polys
from .fields import GF, Field
from .hecke import hecke_algebra
from .modules import Module, hom_space, subquotient

__all__ = [
    "NonSplitError",
    "charpoly",
    "find_submodule",
    "is_irreducible",
    "composition_factors",
    "extend_scalars",
    "SimpleRegistry",
    "series_to_json",
    "trace_signature",
]

MAX_ATTEMPTS = 200


class NonSplitError(RuntimeError):
    """A simple factor has endomorphism ring larger than the ground field."""

    def __init__(self, module: Module, degree: int):
        super().__init__(
            f"non-split endomorphism ring detected: dim End = {degree} for a "
            f"{module.dim}-dimensional simple over {module.field!r}"
        )
        self.module = module
        self.degree = degree


def charpoly(F: Field, A: np.ndarray):
    """Characteristic polynomial (low degree first) via Krylov blocks."""
    d = A.shape[0]
    result = [F.one]
    seen = linalg.EchelonBasis(F, d)
    for s in range(d):
        if len(seen) == d:
            break
        v = F.zeros(d)
        v[s] = F.one
        if not np.any(np.asarray(seen.reduce(v) != 0, dtype=bool)):
            continue
        # rows: (vector reduced against earlier blocks and this block, tag polynomial)
        block_rows, block_piv, block_tags = [], [], []
        w, k = v, 0
        while True:
            r = seen.reduce(w)
            tag = [F.zero] * k + [F.one]
            for row, pc, rt in zip(block_rows, block_piv, block_tags):
                c = r[pc]
                if c != 0:
                    r = F.reduce(r - c * row)
                    tag = polys.sub(F, tag, [F.mul(c, t) for t in rt])
            hits = np.flatnonzero(np.asarray(r != 0, dtype=bool))
            if hits.size == 0:
                result = polys.mul(F, result, polys.trim(F, tag))
                break
            pc = int(hits[0])
            inv = F.inv(r[pc])
            r = F.reduce(r * inv)
            tag = [F.mul(t, inv) for t in tag]
            block_rows.append(r)
            block_piv.append(pc)
            block_tags.append(tag)
            w = linalg.matmul(F, w[None, :], A)[0]
            k += 1
        for row in block_rows:
            seen.add(row)
    return result


class _WordPool:
    """Random algebra elements built from products of the generators."""

    def __init__(self, F: Field, gens, rng):
        self.F = F
        self.words = list(gens)
        self.base = len(self.words)
        self.rng = rng

    def next(self):
        F, rng = self.F, self.rng
        if len(self.words) >= 2:
            i, j = rng.integers(0, len(self.words), size=2)
            self.words.append(linalg.matmul(F, self.words[i], self.words[j]))
            if len(self.words) > self.base + 30:
                self.words.pop(self.base)
        A = F.zeros(self.words[0].shape)
        for W in self.words:
            A = F.reduce(A + W * F.random(rng))
        return A


def _transpose(gens):
    return [np.ascontiguousarray(g.T) for g in gens]


def find_submodule(F: Field, gens, dim: int, rng):
    """Return ``(sub_rows, None)`` for a proper submodule or ``(None, (f, A))``
    once irreducibility is certified by the factor ``f`` of the element ``A``."""
    if dim <= 1:
        return None, None
    if not gens:
        e = F.zeros((1, dim))
        e[0, 0] = F.one
        return e, None
    pool = _WordPool(F, gens, rng)
    tgens = None
    for _ in range(MAX_ATTEMPTS):
        A = pool.next()
        facs = polys.irreducible_factors(F, charpoly(F, A), seed=int(rng.integers(1 << 30)))
        for f in facs:
            fA = polys.matrix_poly(F, f, A)
            N = linalg.left_nullspace(F, fA)
            v = N[0]
            S = linalg.spin(F, [v], gens)
            if len(S) < dim:
                return S, None
            if tgens is None:
                tgens = _transpose(gens)
            w = linalg.nullspace(F, fA)[0]
            T = linalg.spin(F, [w], tgens)
            if len(T) < dim:
                return linalg.annihilator(F, T, dim), None
            if len(N) == polys.degree(f):
                return None, (f, A)
    raise RuntimeError("MeatAxe gave up; no splitting or certificate found")


def is_irreducible(m: Module, seed: int = 0) -> bool:
    sub, _ = find_submodule(m.field, m.gens(), m.dim, np.random.default_rng(seed))
    return sub is None and m.dim > 0


def trace_signature(m: Module) -> tuple:
    F = m.field
    out = []
    for g in m.gens():
        t = F.zero
        for i in range(m.dim):
            t = F.add(t, g[i, i])
        out.append(F.format(t))
    return tuple(out)


def _factor(m: Module, rng, out: list, check_split: bool):
    if m.dim == 0:
        return
    sub, cert = find_submodule(m.field, m.gens(), m.dim, rng)
    if sub is None:
        if check_split and cert is not None and polys.degree(cert[0]) > 1:
            end = len(hom_space(m, m))
            if end > 1:
                raise NonSplitError(m, end)
        out.append(m)
        return
    a, b = subquotient(m, sub)
    _factor(a, rng, out, check_split)
    _factor(b, rng, out, check_split)


def composition_factors(m: Module, seed: int = 0, check_split: bool = True) -> list[Module]:
    """Composition factors of ``m``, sorted by dimension then trace signature.

    Raises :class:`NonSplitError` when a factor is irreducible but not
    absolutely irreducible over the ground field.
    """
    out: list[Module] = []
    _factor(m, np.random.default_rng(seed), out, check_split)
    return sorted(out, key=lambda s: (s.dim, trace_signature(s)))


def extend_scalars(m: Module, degree: int) -> Module:
    """The same module over ``GF(p^degree)``."""
    F = m.field
    if not F.is_finite() or getattr(F, "k", 1) != 1:
        raise ValueError("scalar extension is only provided from a prime field")
    E = GF(F.characteristic, degree)
    A = hecke_algebra(m.n, E(int(m.algebra.u)), E, m.algebra.flavor)
    actions = {}
    for g, mat in m.actions.items():
        big = np.empty(mat.shape, dtype=object)
        for idx, x in np.ndenumerate(mat):
            big[idx] = E(int(x))
        actions[g] = big
    return Module(A, m.composition, m.dim, actions, check=False)


@dataclass
class SimpleRegistry:
    """Isomorphism classes of simples with stable ids, one namespace per
    (algebra, composition).  Ids look like ``"4:3"`` or ``"(2,2):1"``."""

    seed: int = 0
    entries: dict = dc_field(default_factory=dict)
    # set when some factorisation had to leave the prime field
    extended: list = dc_field(default_factory=list)
    # classes of coinduced simples, filled lazily by the K0 code
    induced: dict = dc_field(default_factory=dict)

    @staticmethod
    def _key(m: Module):
        return (m.algebra.key(), tuple(m.composition))

    @staticmethod
    def _prefix(m: Module) -> str:
        return str(m.n) if m.is_full else str(m.composition)

    def __len__(self):
        return sum(len(v) for v in self.entries.values())

    def simples(self, m_like: Module | None = None):
        if m_like is None:
            return [e for v in self.entries.values() for e in v]
        return list(self.entries.get(self._key(m_like), []))

    def lookup(self, sid: str) -> Module:
        for v in self.entries.values():
            for i, s in v:
                if i == sid:
                    return s
        raise KeyError(sid)

    def find(self, s: Module):
        sig = (s.dim, trace_signature(s))
        for sid, t in self.entries.get(self._key(s), []):
            if (t.dim, trace_signature(t)) == sig and hom_space(s, t):
                return sid
        return None

    def register(self, s: Module, verify: bool = True) -> str:
        if verify and not is_irreducible(s, self.seed):
            raise ValueError("only simple modules can be registered")
        sid = self.find(s)
        if sid is not None:
            return sid
        bucket = self.entries.setdefault(self._key(s), [])
        sid = f"{self._prefix(s)}:{len(bucket) + 1}"
        bucket.append((sid, s))
        return sid

    def factor(self, m: Module) -> list[str]:
        """Ids of the composition factors of ``m`` (registering new ones)."""
        try:
            facs = composition_factors(m, self.seed)
        except NonSplitError as exc:
            self.extended.append(exc.degree)
            facs = composition_factors(extend_scalars(m, exc.degree), self.seed)
        return [self.register(s, verify=False) for s in facs]


def series_to_json(ids: list[str], reg: SimpleRegistry) -> str:
    counts: dict[str, int] = {}
    for i in ids:
        counts[i] = counts.get(i, 0) + 1
    return json.dumps(
        [{"id": i, "dim": reg.lookup(i).dim, "multiplicity": c} for i, c in sorted(counts.items())]
    )

"""Finite-dimensional right modules given by action matrices.

A :class:`Module` lives over the parabolic subalgebra ``H(alpha)`` of a
:class:`~heckemod.hecke.HeckeAlgebra` (``alpha = (n,)`` is the full algebra).
Vectors are rows and ``x * h`` is ``x @ M(h)``.

The functors here are restriction to a finer composition, coinduction
``Hom_{H(alpha)}(H, m)`` back to the full algebra, outer products, and the
twist by the involution ``tau``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import linalg
from .combinat import Composition, Permutation, distinguished_reps
from .fields import GF, QQ, Field
from .hecke import AFFINE, FINITE, HeckeAlgebra, HeckeElement, hecke_algebra, parabolic_decompose

__all__ = [
    "Module",
    "RelationError",
    "make_character",
    "restrict",
    "coinduce",
    "tensor",
    "outer_product",
    "tau_twist",
    "hom_space",
    "find_isomorphism",
    "direct_sum",
    "conjugate",
    "subquotient",
    "module_to_json",
    "module_from_json",
]


class RelationError(ValueError):
    """Action matrices violate a defining relation."""


@dataclass(eq=False)
class Module:
    algebra: HeckeAlgebra
    composition: Composition
    dim: int
    actions: dict
    check: bool = True
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.composition = Composition(self.composition)
        if self.composition.n != self.algebra.n:
            raise ValueError(f"{self.composition} is not a composition of {self.algebra.n}")
        expected = set(self.generator_names())
        if set(self.actions) != expected:
            raise ValueError(f"expected actions for {sorted(expected)}, got {sorted(self.actions)}")
        F = self.field
        for name, mat in self.actions.items():
            mat = np.asarray(mat, dtype=F.dtype)
            if mat.shape != (self.dim, self.dim):
                raise ValueError(f"{name} has shape {mat.shape}, expected {(self.dim, self.dim)}")
            self.actions[name] = mat
        if self.check:
            self.check_relations()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def is_full(self) -> bool:
        return self.composition == (self.n,)

    def generator_names(self) -> list[str]:
        names = [f"S{i}" for i in self.composition.generators()]
        if self.algebra.affine:
            names += [f"X{j}" for j in range(1, self.n + 1)]
        return names

    def gens(self) -> list[np.ndarray]:
        return [self.actions[g] for g in self.generator_names()]

    def __repr__(self):
        where = "" if self.is_full else f" over {self.composition}"
        return f"<Module dim={self.dim} of {self.algebra!r}{where}>"

    # -- evaluation ------------------------------------------------------------------
    def x_inverse(self, j: int) -> np.ndarray:
        key = ("Xinv", j)
        if key not in self._cache:
            self._cache[key] = linalg.inverse(self.field, self.actions[f"X{j}"])
        return self._cache[key]

    def _x_power(self, j: int, e: int) -> np.ndarray:
        key = ("Xpow", j, e)
        if key not in self._cache:
            F = self.field
            if e == 0:
                out = F.identity(self.dim)
            elif e > 0:
                out = linalg.matmul(F, self._x_power(j, e - 1), self.actions[f"X{j}"])
            else:
                out = linalg.matmul(F, self._x_power(j, e + 1), self.x_inverse(j))
            self._cache[key] = out
        return self._cache[key]

    def _t_matrix(self, w: Permutation) -> np.ndarray:
        key = ("T", w)
        if key not in self._cache:
            F = self.field
            out = F.identity(self.dim)
            for i in w.reduced_word():
                name = f"S{i}"
                if name not in self.actions:
                    raise ValueError(f"T{w} does not lie in the subalgebra of {self.composition}")
                out = linalg.matmul(F, out, self.actions[name])
            self._cache[key] = out
        return self._cache[key]

    def matrix_of(self, h: HeckeElement) -> np.ndarray:
        """Action matrix of an element of the (parabolic) subalgebra."""
        if h.algebra != self.algebra:
            raise ValueError("element of another algebra")
        F = self.field
        out = F.zeros((self.dim, self.dim))
        for (exps, w), c in h.terms.items():
            mat = self._t_matrix(w)
            for j, e in enumerate(exps, 1):
                if e:
                    mat = linalg.matmul(F, self._x_power(j, e), mat)
            out = F.reduce(out + mat * c)
        return out

    # -- relations ----------------------------------------------------------------------
    def relation_defects(self) -> list[str]:
        F = self.field
        A = self.algebra
        u = A.u
        d = self.dim
        I = F.identity(d)
        mm = lambda *ms: _chain(F, ms)
        bad = []
        gens = self.composition.generators()
        S = {i: self.actions[f"S{i}"] for i in gens}
        for i in gens:
            lhs = mm(F.reduce(S[i] + I), F.reduce(S[i] - I * u))
            if not linalg.is_zero(lhs):
                bad.append(f"quadratic S{i}")
        for i in gens:
            for j in gens:
                if j >= i + 2 and not linalg.equal(mm(S[i], S[j]), mm(S[j], S[i])):
                    bad.append(f"commute S{i} S{j}")
            if i + 1 in S and not linalg.equal(mm(S[i], S[i + 1], S[i]), mm(S[i + 1], S[i], S[i + 1])):
                bad.append(f"braid S{i} S{i + 1}")
        if A.affine:
            X = {j: self.actions[f"X{j}"] for j in range(1, self.n + 1)}
            for j in X:
                if not linalg.is_invertible(F, X[j]):
                    bad.append(f"X{j} not invertible")
                for k in X:
                    if k > j and not linalg.equal(mm(X[j], X[k]), mm(X[k], X[j])):
                        bad.append(f"commute X{j} X{k}")
            for i in gens:
                for j in X:
                    if j not in (i, i + 1) and not linalg.equal(mm(X[j], S[i]), mm(S[i], X[j])):
                        bad.append(f"commute X{j} S{i}")
                if not linalg.equal(mm(S[i], X[i], S[i]), F.reduce(X[i + 1] * u)):
                    bad.append(f"cross S{i} X{i}")
        return bad

    def check_relations(self):
        bad = self.relation_defects()
        if bad:
            raise RelationError("relations fail: " + ", ".join(bad))


def _chain(F, mats):
    out = mats[0]
    for m in mats[1:]:
        out = linalg.matmul(F, out, m)
    return out


def _algebra_for(n, u, field, flavor):
    return hecke_algebra(n, field(u), field, flavor)


def make_character(kind: str, n: int, a: int, u, field: Field, flavor: str = AFFINE) -> Module:
    """One-dimensional segment character.

    ``kind="Z"``: ``S_i -> u``, ``X_j -> u^(a+j-1)``.
    ``kind="L"``: ``S_i -> -1``, ``X_j -> u^(a+n-j)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    A = _algebra_for(n, u, field, flavor)
    F = field
    u = A.u
    if kind == "Z":
        s_val = u
        x_exp = lambda j: a + j - 1
    elif kind == "L":
        s_val = F.neg(F.one)
        x_exp = lambda j: a + n - j
    else:
        raise ValueError(f"unknown character kind {kind!r}")
    actions = {f"S{i}": F.array([[s_val]]) for i in range(1, n)}
    if A.affine:
        actions.update({f"X{j}": F.array([[F.pow(u, x_exp(j))]]) for j in range(1, n + 1)})
    return Module(A, Composition((n,)), 1, actions)


def restrict(m: Module, alpha) -> Module:
    """Forget the ``S_i`` that cross ``alpha``-blocks."""
    alpha = Composition(alpha)
    if alpha.n != m.n:
        raise ValueError(f"{alpha} is not a composition of {m.n}")
    if not set(alpha.generators()) <= set(m.composition.generators()):
        raise ValueError(f"{alpha} does not refine {m.composition}")
    names = [f"S{i}" for i in alpha.generators()]
    if m.algebra.affine:
        names += [f"X{j}" for j in range(1, m.n + 1)]
    return Module(m.algebra, alpha, m.dim, {g: m.actions[g] for g in names}, check=False)


@lru_cache(maxsize=None)
def _coinduction_table(A: HeckeAlgebra, alpha: Composition):
    """For each generator ``g`` and representative ``d``: the pieces of ``g T_d``."""
    reps = distinguished_reps(alpha)
    table = {}
    for name, g in A.generators().items():
        table[name] = [parabolic_decompose(g * A.T(d), alpha) for d in reps]
    return reps, table


def coinduce(m: Module) -> Module:
    """``Hom_{H(alpha)}(H, m)`` realised on functions ``D_alpha -> m``.

    Coordinates are the values ``phi(T_d)`` for the distinguished
    representatives ``d`` in their standard order.
    """
    if m.is_full:
        return m
    A, alpha, F = m.algebra, m.composition, m.field
    reps, table = _coinduction_table(A, alpha)
    k = m.dim
    N = len(reps) * k
    actions = {}
    for name, columns in table.items():
        big = F.zeros((N, N))
        for col, pieces in enumerate(columns):
            for row, d2 in enumerate(reps):
                h = pieces[d2]
                if not h.is_zero():
                    big[row * k:(row + 1) * k, col * k:(col + 1) * k] = m.matrix_of(h)
        actions[name] = big
    return Module(A, Composition((A.n,)), N, actions)


def tensor(*mods: Module) -> Module:
    """External tensor product, a module over ``H(n_1, ..., n_r)``."""
    if not mods:
        raise ValueError("need at least one module")
    first = mods[0]
    F, u, flavor = first.field, first.algebra.u, first.algebra.flavor
    for m in mods:
        if not m.is_full:
            raise ValueError("tensor factors must be modules over full algebras")
        if (m.field, m.algebra.u, m.algebra.flavor) != (F, u, flavor):
            raise ValueError("tensor factors over different parameters")
    parts = [m.n for m in mods]
    A = hecke_algebra(sum(parts), u, F, flavor)
    dims = [m.dim for m in mods]
    actions = {}
    offset = 0
    for idx, m in enumerate(mods):
        left = int(np.prod(dims[:idx], dtype=object)) if idx else 1
        right = int(np.prod(dims[idx + 1:], dtype=object)) if idx + 1 < len(mods) else 1
        IL, IR = F.identity(left), F.identity(right)
        for name, mat in m.actions.items():
            kind, j = name[0], int(name[1:])
            actions[f"{kind}{j + offset}"] = F.reduce(np.kron(np.kron(IL, mat), IR))
        offset += m.n
    return Module(A, Composition(parts), int(np.prod(dims, dtype=object)), actions, check=False)


def outer_product(*mods: Module) -> Module:
    """``m_1 x ... x m_r``: coinduction of the external tensor product."""
    return coinduce(tensor(*mods))


def tau_twist(m: Module) -> Module:
    """Same space, ``h`` acting through ``tau(h)``; only over the full algebra."""
    if not m.is_full:
        raise ValueError("tau maps H(alpha) onto H(reversed alpha); twist over the full algebra")
    A, F, n = m.algebra, m.field, m.n
    I = F.identity(m.dim)
    um1 = F.sub(A.u, F.one)
    actions = {f"S{i}": F.reduce(I * um1 - m.actions[f"S{n - i}"]) for i in range(1, n)}
    if A.affine:
        actions.update({f"X{j}": m.actions[f"X{n + 1 - j}"] for j in range(1, n + 1)})
    return Module(A, m.composition, m.dim, actions, check=False)


def direct_sum(a: Module, b: Module) -> Module:
    if a.algebra != b.algebra or a.composition != b.composition:
        raise ValueError("summands over different algebras")
    F = a.field
    actions = {}
    for name in a.generator_names():
        big = F.zeros((a.dim + b.dim, a.dim + b.dim))
        big[: a.dim, : a.dim] = a.actions[name]
        big[a.dim:, a.dim:] = b.actions[name]
        actions[name] = big
    return Module(a.algebra, a.composition, a.dim + b.dim, actions, check=False)


def conjugate(m: Module, P: np.ndarray) -> Module:
    """The isomorphic module with basis the rows of ``P``."""
    F = m.field
    Pinv = linalg.inverse(F, P)
    actions = {g: _chain(F, [P, mat, Pinv]) for g, mat in m.actions.items()}
    return Module(m.algebra, m.composition, m.dim, actions, check=False)


def subquotient(m: Module, sub: np.ndarray) -> tuple[Module, Module]:
    """Submodule spanned by the rows of ``sub`` and the quotient by it."""
    F = m.field
    k = len(sub)
    P = linalg.complete_basis(F, sub, m.dim)
    Pinv = linalg.inverse(F, P)
    sub_actions, quo_actions = {}, {}
    for g, mat in m.actions.items():
        B = _chain(F, [P, mat, Pinv])
        if not linalg.is_zero(B[:k, k:]):
            raise ValueError("rows do not span a submodule")
        sub_actions[g] = B[:k, :k].copy()
        quo_actions[g] = B[k:, k:].copy()
    return (
        Module(m.algebra, m.composition, k, sub_actions, check=False),
        Module(m.algebra, m.composition, m.dim - k, quo_actions, check=False),
    )


def _standard_basis(F: Field, dim: int, gens):
    """Spin the unit vectors; remember how each basis vector was reached."""
    basis = linalg.EchelonBasis(F, dim)
    vectors, origin = [], []
    for s in range(dim):
        if len(vectors) == dim:
            break
        e = F.zeros(dim)
        e[s] = F.one
        if not basis.add(e):
            continue
        vectors.append(e)
        origin.append(("seed", s))
        head = len(vectors) - 1
        while head < len(vectors):
            v = vectors[head]
            for gi, g in enumerate(gens):
                w = linalg.matmul(F, v[None, :], g)[0]
                if basis.add(w):
                    vectors.append(w)
                    origin.append(("child", head, gi))
            head += 1
    return np.array(vectors, dtype=F.dtype).reshape(len(vectors), dim), origin


def hom_space(m: Module, k: Module) -> list[np.ndarray]:
    """Basis of ``Hom(m, k)``: matrices ``P`` with ``M_m(g) P == P M_k(g)``."""
    if m.algebra != k.algebra or m.composition != k.composition:
        raise ValueError("modules over different algebras")
    F = m.field
    dm, dk = m.dim, k.dim
    if dm == 0 or dk == 0:
        return []
    gm, gk = m.gens(), k.gens()
    B, origin = _standard_basis(F, dm, gm)
    seeds = [i for i, o in enumerate(origin) if o[0] == "seed"]
    s = len(seeds)
    # image of basis vector i is Phi @ L[i] with Phi the stacked images of the seeds
    L = []
    for o in origin:
        if o[0] == "seed":
            blk = F.zeros((s * dk, dk))
            idx = seeds.index(len(L))
            blk[idx * dk:(idx + 1) * dk, :] = F.identity(dk)
            L.append(blk)
        else:
            _, parent, gi = o
            L.append(linalg.matmul(F, L[parent], gk[gi]))
    Binv = linalg.inverse(F, B)
    children = {(o[1], o[2]) for o in origin if o[0] == "child"}
    N = F.identity(s * dk)
    Lstack = np.stack(L) if L else None
    for i in range(dm):
        for gi in range(len(gm)):
            if (i, gi) in children:
                continue
            coords = linalg.matmul(F, linalg.matmul(F, B[i:i + 1], gm[gi]), Binv)[0]
            C = linalg.matmul(F, L[i], gk[gi])
            nz = np.flatnonzero(np.asarray(coords != 0, dtype=bool))
            for j in nz:
                C = F.reduce(C - Lstack[j] * coords[j])
            Y = linalg.matmul(F, N, C)
            if linalg.is_zero(Y):
                continue
            Z = linalg.left_nullspace(F, Y)
            N = linalg.matmul(F, Z, N)
            if N.shape[0] == 0:
                return []
    out = []
    for phi in N:
        images = np.array([linalg.matmul(F, phi[None, :], L[i])[0] for i in range(dm)], dtype=F.dtype)
        out.append(linalg.matmul(F, Binv, images))
    return out


def find_isomorphism(m: Module, k: Module, seed: int = 0, tries: int = 50):
    """An invertible intertwiner ``m -> k`` or ``None``."""
    if m.dim != k.dim:
        return None
    basis = hom_space(m, k)
    if not basis:
        return None
    F = m.field
    for P in basis:
        if linalg.is_invertible(F, P):
            return P
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        P = F.zeros((m.dim, m.dim))
        for B in basis:
            P = F.reduce(P + B * F.random(rng))
        if linalg.is_invertible(F, P):
            return P
    return None


# -- serialisation ----------------------------------------------------------------------

def field_from_spec(spec: str) -> Field:
    spec = str(spec).strip()
    if spec in ("rationals", "QQ", "0"):
        return QQ
    if "^" in spec:
        p, k = spec.split("^")
        return GF(int(p), int(k))
    return GF(int(spec))


def module_to_json(m: Module) -> str:
    F = m.field
    return json.dumps(
        {
            "descriptor": {
                "n": m.n,
                "u": F.format(m.algebra.u),
                "field": F.spec(),
                "flavor": m.algebra.flavor,
                "composition": list(m.composition),
            },
            "dim": m.dim,
            "actions": {g: [[F.format(x) for x in row] for row in m.actions[g]] for g in m.generator_names()},
        }
    )


def module_from_json(text: str) -> Module:
    data = json.loads(text)
    desc = data["descriptor"]
    F = field_from_spec(desc["field"])
    A = hecke_algebra(int(desc["n"]), F.parse(desc["u"]), F, desc.get("flavor", AFFINE))
    dim = int(data["dim"])
    actions = {}
    for g, rows in data["actions"].items():
        mat = F.zeros((dim, dim))
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                mat[i, j] = F.parse(str(x))
        actions[g] = mat
    return Module(A, Composition(desc.get("composition", [A.n])), dim, actions)


__all__ += ["field_from_spec", "FINITE", "AFFINE"]

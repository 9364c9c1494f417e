"""Exact dense linear algebra over a :class:`~heckemod.fields.Field`.

Vectors are rows.  A right module acts by ``v -> v @ M``, so ``M(gh) = M(g) @ M(h)``
and subspaces are row spaces.
"""

from __future__ import annotations

import numpy as np

from .fields import Field


def matmul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return F.reduce(A @ B)


def _nonzero_mask(col: np.ndarray) -> np.ndarray:
    return np.asarray(col != 0, dtype=bool)


def rref(F: Field, A: np.ndarray):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    A = np.array(A, dtype=F.dtype, copy=True)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(_nonzero_mask(A[r:, c]))
        if hits.size == 0:
            continue
        k = r + int(hits[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = F.reduce(A[r] * F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = F.zero
        touched = np.flatnonzero(_nonzero_mask(col))
        if touched.size:
            A[touched] = F.reduce(A[touched] - np.outer(col[touched], A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Rows ``x`` spanning ``{x : A @ x == 0}``."""
    rows, cols = A.shape
    R, pivots = rref(F, A) if rows else (A, [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = F.zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = F.one
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.neg(R[i, f])
    return basis


def left_nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Rows ``v`` spanning ``{v : v @ A == 0}``."""
    return nullspace(F, np.ascontiguousarray(A.T))


def inverse(F: Field, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    aug = np.concatenate([np.array(A, dtype=F.dtype), F.identity(n)], axis=1)
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def is_invertible(F: Field, A: np.ndarray) -> bool:
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def row_basis(F: Field, A: np.ndarray) -> np.ndarray:
    """Echelon basis of the row space of ``A``."""
    if A.shape[0] == 0:
        return A
    R, pivots = rref(F, A)
    return R[: len(pivots)]


def is_zero(A: np.ndarray) -> bool:
    return not np.any(_nonzero_mask(A)) if A.size else True


def equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and (A.size == 0 or bool(np.all(np.asarray(A == B, dtype=bool))))


class EchelonBasis:
    """Incrementally grown row-echelon basis of a subspace of ``F^dim``."""

    def __init__(self, F: Field, dim: int):
        self.F = F
        self.dim = dim
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        F = self.F
        v = np.array(v, dtype=F.dtype, copy=True)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c != 0:
                v = F.reduce(v - c * row)
        return v

    def add(self, v: np.ndarray) -> bool:
        """Add ``v`` if it is independent; report whether it was."""
        F = self.F
        w = self.reduce(v)
        hits = np.flatnonzero(_nonzero_mask(w))
        if hits.size == 0:
            return False
        pc = int(hits[0])
        w = F.reduce(w * F.inv(w[pc]))
        # keep the basis reduced so reduce() needs one pass
        for i, row in enumerate(self.rows):
            c = row[pc]
            if c != 0:
                self.rows[i] = F.reduce(row - c * w)
        self.rows.append(w)
        self.pivots.append(pc)
        return True

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return self.F.zeros((0, self.dim))
        order = np.argsort(self.pivots)
        return np.array([self.rows[i] for i in order], dtype=self.F.dtype)


def spin(F: Field, seeds, gens) -> np.ndarray:
    """Smallest subspace containing ``seeds`` and stable under ``v -> v @ g``."""
    dim = gens[0].shape[0] if gens else np.asarray(seeds).shape[-1]
    basis = EchelonBasis(F, dim)
    queue = []
    for s in seeds:
        if basis.add(s):
            queue.append(basis.rows[-1])
    while queue and len(basis) < dim:
        v = queue.pop()
        for g in gens:
            w = F.reduce(v @ g)
            if basis.add(w):
                queue.append(basis.rows[-1])
    return basis.matrix()


def complete_basis(F: Field, sub: np.ndarray, dim: int) -> np.ndarray:
    """Rows of ``sub`` followed by standard vectors completing them to a basis."""
    basis = EchelonBasis(F, dim)
    for v in sub:
        basis.add(v)
    extra = []
    for i in range(dim):
        e = F.zeros(dim)
        e[i] = F.one
        if basis.add(e):
            extra.append(e)
    if not extra:
        return np.array(sub, dtype=F.dtype)
    return np.concatenate([np.array(sub, dtype=F.dtype).reshape(-1, dim), np.array(extra, dtype=F.dtype)])


def annihilator(F: Field, cols: np.ndarray, dim: int) -> np.ndarray:
    """Rows ``v`` with ``v . w == 0`` for every row ``w`` of ``cols``."""
    if len(cols) == 0:
        return F.identity(dim)
    return nullspace(F, np.array(cols, dtype=F.dtype))

"""Independent reference implementations used to cross-check the library.

None of these call into the code path they check: they rebuild the answer
from a definition by brute force or from a closed formula.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import sympy


# -- affine commutation -------------------------------------------------------------------

def demazure_commute(i: int, beta: tuple, u, F):
    """``S_i X^beta`` as ``{(exps, has_S): coef}``, from the closed divided-difference
    formula ``S f = (s f) S + (u - 1) X_{i+1} (f - s f) / (X_{i+1} - X_i)``."""
    a, b = beta[i - 1], beta[i]
    swapped = list(beta)
    swapped[i - 1], swapped[i] = b, a
    out = Counter()
    out[(tuple(swapped), True)] = F.one
    um1 = F.sub(u, F.one)
    if a != b:
        c = min(a, b)
        k = abs(a - b)
        sign = F.neg(F.one) if a > b else F.one
        for j in range(k):
            exps = list(beta)
            # x_i^(c + j) x_{i+1}^(c + k - 1 - j), then times X_{i+1}
            exps[i - 1] = c + j
            exps[i] = c + k - 1 - j + 1
            key = (tuple(exps), False)
            out[key] = F.add(out.get(key, F.zero), F.mul(sign, um1))
    return {k: v for k, v in out.items() if not F.is_zero(v)}


# -- permutations -------------------------------------------------------------------------

def perm_length(w) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def compose(v, w):
    return tuple(v[j - 1] for j in w)


def parabolic_subgroup(alpha):
    n = sum(alpha)
    blocks, start = [], 0
    for p in alpha:
        blocks.append(list(range(start, start + p)))
        start += p
    out = []
    for perms in itertools.product(*[itertools.permutations(b) for b in blocks]):
        img = [0] * n
        for b, p in zip(blocks, perms):
            for src, dst in zip(b, p):
                img[src] = dst + 1
        out.append(tuple(img))
    return out


def coset_minima(alpha):
    """Shortest element of every left coset ``w W_alpha``, by exhaustion."""
    n = sum(alpha)
    W = parabolic_subgroup(alpha)
    seen, reps = set(), []
    for w in itertools.permutations(range(1, n + 1)):
        if w in seen:
            continue
        coset = [compose(w, v) for v in W]
        seen.update(coset)
        reps.append(min(coset, key=perm_length))
    return sorted(reps)


# -- linear algebra -------------------------------------------------------------------------

def charpoly_mod_p(A, p):
    x = sympy.Symbol("x")
    M = sympy.Matrix(A.tolist())
    poly = sympy.Poly(M.charpoly(x).as_expr(), x, modulus=p)
    return [int(c) % p for c in reversed(poly.all_coeffs())]


def hom_dimension_kron(F, gm, gk):
    """``dim Hom`` by solving the full Kronecker system ``M P = P K``."""
    dm, dk = gm[0].shape[0], gk[0].shape[0]
    rows = []
    for A, B in zip(gm, gk):
        # vec(A P - P B) in row-major vec order: (A kron I - I kron B^T) vec(P)
        rows.append(np.kron(A, np.eye(dk, dtype=A.dtype)) - np.kron(np.eye(dm, dtype=A.dtype), B.T))
    big = F.reduce(np.concatenate(rows))
    M = sympy.Matrix(big.tolist())
    if F.characteristic:
        rank = _rank_mod_p(big, F.characteristic)
    else:
        rank = M.rank()
    return dm * dk - rank


def _rank_mod_p(A, p):
    A = [[int(x) % p for x in row] for row in A.tolist()]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], p - 2, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def invariant_lines(gens, p):
    """All one-dimensional invariant subspaces of ``F_p^d``, by enumeration."""
    d = gens[0].shape[0]
    found = []
    for v in itertools.product(range(p), repeat=d):
        first = next((x for x in v if x), None)
        if first != 1:
            continue  # one normalised representative per line
        vec = np.array(v, dtype=np.int64)
        if all(_parallel((vec @ g) % p, vec, p) for g in gens):
            found.append(vec)
    return found


def _parallel(w, v, p):
    # w is a multiple of v (v normalised, leading entry 1)
    k = next(i for i, x in enumerate(v) if x)
    c = w[k] % p
    return np.array_equal((c * v) % p, w % p)


# -- multisegments ------------------------------------------------------------------------

def brute_aperiodic(segments, e) -> bool:
    if e == 0:
        return True
    present = set(segments)
    lengths = range(1, sum(n for _, n in segments) + 1)
    return all(any((k, n) not in present for k in range(e)) for n in lengths)


def brute_preceq(mu_lengths, nu_lengths) -> bool:
    def top(lengths, k):
        if k >= len(lengths):
            return sum(lengths)
        return max(sum(c) for c in itertools.combinations(lengths, k))

    size = max(len(mu_lengths), len(nu_lengths))
    return all(top(mu_lengths, k) <= top(nu_lengths, k) for k in range(1, size + 1))


def brute_multisegments(weight, e, starts):
    segs = [(a % e if e else a, n) for a in starts for n in range(1, weight + 1)]
    segs = sorted(set(segs))
    out = set()
    for r in range(1, weight + 1):
        for combo in itertools.combinations_with_replacement(segs, r):
            if sum(n for _, n in combo) == weight:
                out.add(tuple(sorted(combo)))
    if weight == 0:
        out.add(())
    return out


def brute_e(u: int, p: int) -> int:
    for k in range(2, p + 2):
        if sum(pow(u, j, p) for j in range(k)) % p == 0:
            return k
    return 0

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from heckemod import linalg, polys
from heckemod.fields import GF, QQ
from heckemod.meataxe import charpoly
from oracles import charpoly_mod_p


def _product(F, facs):
    out = [F.one]
    for f in facs:
        out = polys.mul(F, out, f)
    return out


@given(st.sampled_from([2, 3, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=9))
def test_finite_factors_are_irreducible_and_divide(p, coeffs):
    F = GF(p)
    f = polys.trim(F, [F(c) for c in coeffs] + [F.one])
    facs = polys.irreducible_factors(F, f)
    assert all(polys.is_irreducible(F, h) for h in facs)
    assert all(not polys.divmod_(F, f, h)[1] for h in facs)
    x = sympy.Symbol("x")
    ref = sympy.Poly(list(reversed([int(c) for c in f])), x, modulus=p).factor_list()[1]
    assert len(facs) == len(ref)


def test_factor_with_repeated_and_pth_power_parts():
    F = GF(3)
    x_plus_1 = [F.one, F.one]
    f = polys.mul(F, polys.mul(F, x_plus_1, x_plus_1), x_plus_1)  # (x+1)^3 = x^3 + 1
    assert polys.irreducible_factors(F, f) == [[1, 1]]


def test_rational_factors():
    from fractions import Fraction

    f = [Fraction(-2), Fraction(0), Fraction(1)]  # x^2 - 2
    assert polys.irreducible_factors(QQ, f) == [f]
    g = [Fraction(-1), Fraction(0), Fraction(1)]
    assert sorted(polys.roots(QQ, g)) == [-1, 1]


def test_least_irreducible():
    assert polys.least_irreducible(GF(2), 2) == [1, 1, 1]
    assert polys.least_irreducible(GF(3), 2) == [1, 0, 1]


@given(st.sampled_from([5, 7]), st.integers(1, 6), st.integers(0, 10_000))
def test_charpoly_matches_sympy(p, d, seed):
    F = GF(p)
    A = F.random_array(np.random.default_rng(seed), (d, d))
    assert charpoly(F, A) == charpoly_mod_p(A, p)


def test_charpoly_rational():
    from fractions import Fraction

    A = QQ.array([[1, 2], [3, 4]])
    assert charpoly(QQ, A) == [Fraction(-2), Fraction(-5), Fraction(1)]


@given(st.sampled_from([2, 3, 11]), st.integers(1, 6), st.integers(1, 6), st.integers(0, 10_000))
def test_rank_nullity(p, r, c, seed):
    F = GF(p)
    A = F.random_array(np.random.default_rng(seed), (r, c))
    N = linalg.nullspace(F, A)
    assert linalg.rank(F, A) + len(N) == c
    if len(N):
        assert linalg.is_zero(linalg.matmul(F, A, N.T))
    L = linalg.left_nullspace(F, A)
    if len(L):
        assert linalg.is_zero(linalg.matmul(F, L, A))


@given(st.integers(1, 6), st.integers(0, 10_000))
def test_inverse(d, seed):
    F = GF(7)
    rng = np.random.default_rng(seed)
    A = F.random_array(rng, (d, d))
    if linalg.is_invertible(F, A):
        assert linalg.equal(linalg.matmul(F, A, linalg.inverse(F, A)), F.identity(d))
    else:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(F, A)


def test_spin_and_annihilator():
    F = GF(5)
    g = F.array([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    e1 = F.array([1, 0, 0])
    assert len(linalg.spin(F, [e1], [g])) == 2
    S = linalg.spin(F, [F.array([0, 1, 0])], [g])
    assert len(S) == 1
    ann = linalg.annihilator(F, S, 3)
    assert len(ann) == 2
    assert linalg.is_zero(linalg.matmul(F, ann, S.T))


def test_complete_basis_is_invertible():
    F = GF(3)
    sub = F.array([[1, 1, 0, 0], [0, 0, 1, 2]])
    P = linalg.complete_basis(F, sub, 4)
    assert P.shape == (4, 4) and linalg.is_invertible(F, P)
    assert linalg.equal(P[:2], sub)


def test_object_dtype_for_large_primes():
    F = GF(2**31 - 1)
    A = F.array([[2**30, 1], [5, 2**30]])
    inv = linalg.inverse(F, A)
    assert linalg.equal(linalg.matmul(F, A, inv), F.identity(2))

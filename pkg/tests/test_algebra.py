from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from symint.algebra import (Gauss, MixedFieldError, Poly, QuadExt, RatFun, is_squarefree, poly_divmod,
                            poly_gcd, poly_shift, rat_normalize, resultant, squarefree_factor, sqrt_scalar)

x = Poly.x()
BRONSTEIN_DEN = x**6 - 5 * x**4 + 5 * x**2 + 4
BRONSTEIN_NUM = x**4 - 3 * x**2 + 6


def sylvester_det(a: Poly, b: Poly):
    """Resultant as the Sylvester determinant, by exact Gaussian elimination."""
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([F(0)] * i + list(reversed(a.coeffs)) + [F(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F(0)] * i + list(reversed(b.coeffs)) + [F(0)] * (size - n - 1 - i))
    det = F(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c] != 0), None)
        if piv is None:
            return F(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, size):
            k = rows[r][c] / rows[c][c]
            rows[r] = [u - k * v for u, v in zip(rows[r], rows[c])]
    return det


rats = st.builds(F, st.integers(-20, 20), st.sampled_from([1, 1, 2, 3, 6]))
polys = st.lists(rats, min_size=1, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# -- scalars ----------------------------------------------------------------------

def test_quadext_canonical_and_closed():
    r2 = QuadExt.make(0, 1, 2)
    assert r2 * r2 == 2
    assert (1 + r2) * (1 - r2) == -1
    assert 1 / (1 + r2) == r2 - 1
    assert QuadExt.make(3, 0, 2) == 3
    assert sqrt_scalar(F(8)) == 2 * r2
    with pytest.raises(MixedFieldError):
        r2 + QuadExt.make(0, 1, 3)


def test_gauss_arithmetic():
    z = Gauss.make(2, 1) * Gauss.make(3, 1)
    assert z == Gauss.make(5, 5)


# -- division and gcd --------------------------------------------------------------

def test_divmod_examples():
    assert poly_divmod(x * x - 1, x - 1) == (x + 1, Poly())
    assert poly_divmod(x * x + 1, x) == (x, Poly.const(1))
    assert poly_divmod(BRONSTEIN_NUM, BRONSTEIN_DEN) == (Poly(), BRONSTEIN_NUM)


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(x, Poly())


def test_gcd_examples():
    assert poly_gcd(x * x - 1, x * x - 3 * x + 2) == x - 1
    assert poly_gcd(2 * x + 4, Poly()) == x + 2
    assert poly_gcd(BRONSTEIN_DEN, BRONSTEIN_DEN.deriv()) == Poly.const(1)


@given(polys, nonzero_polys)
def test_divmod_reconstructs(a, b):
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_cofactors_coprime(a, b, c):
    a, b = a * c, b * c
    g = poly_gcd(a, b)
    assert poly_divmod(a, g)[1].is_zero() and poly_divmod(b, g)[1].is_zero()
    assert poly_gcd(a // g, b // g).degree == 0
    assert g.lc == 1


# -- squarefree factorization ---------------------------------------------------------

def test_squarefree_examples():
    assert squarefree_factor(x * x) == [(x, 2)]
    [(f, m)] = squarefree_factor(16 * x**4 + 1)
    assert m == 1 and f == x**4 + F(1, 16)
    assert sorted(squarefree_factor((x - 1) ** 2 * (x + 2)), key=lambda t: t[1]) == [(x + 2, 1), (x - 1, 2)]


@given(st.lists(st.tuples(nonzero_polys, st.integers(1, 3)), min_size=1, max_size=3))
def test_squarefree_reassembles(parts):
    p = Poly.const(1)
    for f, m in parts:
        p = p * f**m
    factors = squarefree_factor(p)
    prod = Poly.const(1)
    for f, m in factors:
        assert is_squarefree(f)
        prod = prod * f**m
    assert prod.monic() == p.monic()
    for i, (f, _) in enumerate(factors):
        for g, _ in factors[i + 1:]:
            assert poly_gcd(f, g).degree == 0


# -- resultants -----------------------------------------------------------------------

def test_resultant_examples():
    assert resultant(x * x + 1, x - 2) == 5
    assert resultant(x - F(3), x - F(7, 2)) == F(3) - F(7, 2)
    assert resultant(x * x - 2, x * x - 3) == 1
    assert sylvester_det(x * x - 2, x * x - 3) == 1


def test_resultant_exposes_prs():
    value, prs = resultant(x * x + 1, x - 2, with_prs=True)
    assert value == 5 and prs[0] == x * x + 1


@given(nonzero_polys.filter(lambda p: p.degree >= 1), nonzero_polys.filter(lambda p: p.degree >= 1))
def test_resultant_matches_sylvester(a, b):
    assert resultant(a, b) == sylvester_det(a, b)


@given(nonzero_polys.filter(lambda p: p.degree >= 1), nonzero_polys.filter(lambda p: p.degree >= 1),
       st.booleans())
def test_resultant_zero_iff_common_factor(a, b, share):
    if share:
        b = b * (x - 1)
        a = a * (x - 1)
    assert (resultant(a, b) == 0) == (poly_gcd(a, b).degree >= 1)


# -- shift and normalization ------------------------------------------------------------

def test_shift_examples():
    assert poly_shift((x - 1) ** 4 + F(1, 16), 1) == x**4 + F(1, 16)
    assert poly_shift(BRONSTEIN_DEN, 0) == BRONSTEIN_DEN
    assert poly_shift(x * x, -1) == x * x - 2 * x + 1


@given(polys, rats)
def test_shift_round_trip(p, c):
    assert poly_shift(poly_shift(p, c), -c) == p


def test_rat_normalize_examples():
    assert rat_normalize(x * x - 1, x - 1) == RatFun(x + 1)
    assert rat_normalize(2 * x, Poly.const(2)) == RatFun(x)
    r = rat_normalize(BRONSTEIN_NUM, BRONSTEIN_DEN)
    assert r.num == BRONSTEIN_NUM and r.den == BRONSTEIN_DEN
    with pytest.raises(ZeroDivisionError):
        rat_normalize(x, Poly())


@given(polys, nonzero_polys)
def test_ratfun_invariants(a, b):
    r = rat_normalize(a, b)
    assert r.den.lc == 1
    assert poly_gcd(r.num, r.den).degree == 0 or r.num.is_zero()

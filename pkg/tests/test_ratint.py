from fractions import Fraction as F

import pytest
from hypothesis import given

from symint import expr as E
from symint.algebra import Gauss, Poly, QuadExt, RatFun, is_squarefree, poly_gcd
from symint.parser import parse, print_expr
from symint.ratint import (AntiDeriv, AtanTerm, LogTerm, NotFullySplit, UnsupportedAlgebraicDegree,
                           hermite_reduce, integrate_rational, log_part, log_to_atan, partial_fractions,
                           rectify_atan, rt_resultant)
from checks import continuity_violations
from strategies import random_proper, rng_from, seeds

x = Poly.x()
R2 = QuadExt.make(0, 1, 2)
BRONSTEIN = "(x^4-3*x^2+6)/(x^6-5*x^4+5*x^2+4)"
ADAMCHIK = "(x^2+2*x+4)/(x^4-7*x^2+2*x+17)"
TOBEY = ("(7*x^13+10*x^8+4*x^7-7*x^6-4*x^3-4*x^2+3*x+3)/"
         "(x^14-2*x^8-2*x^7-2*x^4-4*x^3-x^2+2*x+1)")


def rf(text, var="x"):
    return E.expr_to_ratfun(parse(text), var)


# -- Hermite reduction -----------------------------------------------------------------

def test_hermite_squarefree_is_untouched():
    f = rf(BRONSTEIN)
    U, A = hermite_reduce(f)
    assert U.is_zero() and A == f


def test_hermite_examples():
    U, A = hermite_reduce(RatFun(Poly.const(1), x * x))
    assert U == RatFun(Poly.const(-1), x) and A.is_zero()
    U, A = hermite_reduce(RatFun(Poly.const(1), (x * x + 1) ** 2))
    assert U == RatFun(x * F(1, 2), x * x + 1)
    assert A == RatFun(Poly.const(F(1, 2)), x * x + 1)


@given(seeds)
def test_hermite_postcondition(seed):
    f = random_proper(rng_from(seed))
    U, A = hermite_reduce(f)
    assert U.deriv() + A == f
    assert is_squarefree(A.den)
    assert A.is_zero() or A.num.degree < A.den.degree


# -- partial fractions ------------------------------------------------------------------

def _reassemble(parts):
    total = RatFun(Poly())
    for num, fac in parts:
        total = total + RatFun(num if isinstance(num, Poly) else Poly.const(num), fac)
    return total


def test_partial_fractions_rational():
    parts = partial_fractions(RatFun(Poly.const(1), x * x - 1))
    assert sorted((c, str(p)) for c, p in parts) == [(F(-1, 2), "x+1"), (F(1, 2), "x-1")]


def test_partial_fractions_sqrt2():
    A = RatFun(Poly.const(1), x * x - 2)
    parts = partial_fractions(A, radicand=2)
    want = {str(x - R2): 1 / (2 * R2), str(x + R2): -1 / (2 * R2)}
    assert {str(p): c for c, p in parts} == want
    assert _reassemble(parts) == A


def test_partial_fractions_quadratic_factor():
    A = RatFun(x + 3, (x * x + 1) * (x - 2))
    assert _reassemble(partial_fractions(A)) == A


def test_partial_fractions_bronstein_does_not_split():
    with pytest.raises(NotFullySplit):
        partial_fractions(rf(BRONSTEIN))


# -- Rothstein-Trager log part ----------------------------------------------------------------

def test_log_part_of_reciprocal():
    assert log_part(RatFun(Poly.const(1), x)) == [LogTerm(F(1), x)]


def test_resultant_roots_are_residues():
    A = RatFun(Poly.const(1), x * x - 1)
    r = rt_resultant(A)
    assert r(F(1, 2)) == 0 and r(F(-1, 2)) == 0 and r.degree == 2


def test_resultant_of_odd_degree_denominator():
    # deg(a - t*d') drops at t = 0; the interpolated resultant must not care
    A = RatFun(Poly.const(1), x**3 - x)
    r = rt_resultant(A)
    for c in (F(-1), F(1, 2)):
        assert r(c) == 0
    assert r.degree == 3


def test_tobey_log_part():
    terms = log_part(rf(TOBEY))
    got = {(t.coeff, str(t.arg)) for t in terms}
    p_plus = x**7 - R2 * x * x - (1 + R2) * x - 1
    p_minus = x**7 + R2 * x * x - (1 - R2) * x - 1
    assert got == {((1 + R2) / 2, str(p_plus)), ((1 - R2) / 2, str(p_minus))}


def test_gaertner_log_part_and_rectification():
    y = x
    pairs = log_part(rf("16*sqrt(2)/(16*y^4+1)", "y"))
    assert all(isinstance(t.coeff, Gauss) for t in pairs)
    atans, logs = rectify_atan(pairs)
    assert {(t.coeff, str(t.arg)) for t in logs} == {
        (F(2), str(4 * y * y + 2 * R2 * y + 1)), (F(-2), str(4 * y * y - 2 * R2 * y + 1))}
    assert sorted(str(t.arg) for t in atans) == sorted([str(2 * R2 * y - 1), str(2 * R2 * y + 1)])
    assert all(t.coeff == 4 for t in atans)


def test_rectify_simple_pair():
    atans, logs = rectify_atan(log_part(RatFun(Poly.const(1), x * x + 1)))
    assert logs == [] and atans == [AtanTerm(F(1), RatFun(x))]


def test_log_to_atan_gives_polynomial_arguments():
    u, v = x**3 - 3 * x, x * x - 2
    for _, arg in log_to_atan(u, v):
        assert isinstance(arg, Poly)


def test_unsupported_degree_carries_diagnostics():
    with pytest.raises(UnsupportedAlgebraicDegree) as info:
        integrate_rational(RatFun(Poly.const(1), x**3 - 2))
    assert info.value.resultant is not None and info.value.resultant.degree == 3


# -- full pipeline ------------------------------------------------------------------------------

def test_table_integral():
    assert str(integrate_rational(RatFun(Poly.const(1), x * x + 1))) == "atan(x)"


def test_bronstein_indefinite_form():
    F_ = integrate_rational(rf(BRONSTEIN))
    assert str(F_) == "atan(x)+atan(x^3)+atan(1/2*x^5-3/2*x^3+1/2*x)"


def test_adamchik_indefinite_form():
    F_ = integrate_rational(rf(ADAMCHIK))
    assert str(F_) == "atan(x-1)+atan(1/3*x^3-1/3*x^2-x+5/3)"


def test_printed_adamchik_form_has_a_typo():
    # the widely printed x^2 coefficient -1/2 does not differentiate back
    bad = parse("atan(x-1)+atan(1/3*x^3-1/2*x^2-x+5/3)")
    assert not E.expr_equal_as_ratfun(E.differentiate(bad, "x"), parse(ADAMCHIK), "x")


def test_polynomial_and_rational_parts():
    f = rf("x^3/(x-3)^2")
    F_ = integrate_rational(f)
    assert F_.derivative() == f
    assert not F_.poly_part.is_zero() and not F_.rat_part.is_zero()


def test_to_expr_round_trips_through_parser():
    F_ = integrate_rational(rf(TOBEY))
    e = F_.to_expr("x")
    assert parse(print_expr(e)) == e
    assert E.expr_equal_as_ratfun(E.differentiate(e, "x"), parse(TOBEY), "x")


@pytest.mark.parametrize("text", [BRONSTEIN, ADAMCHIK, TOBEY, "sqrt(2)/((x-1)^4+1/16)", "1/(1+x^2)",
                                  "x^3/(x-3)^2", "1/(x^4+1)", "(x+1)/(x^2+x+1)^3"])
def test_defining_identity_on_corpus(text):
    f = rf(text)
    F_ = integrate_rational(f)
    assert F_.derivative() == f
    assert E.expr_to_ratfun(E.differentiate(F_.to_expr("x"), "x"), "x") == f


@given(seeds)
def test_defining_identity_random(seed):
    f = random_proper(rng_from(seed))
    F_ = integrate_rational(f)
    assert F_.derivative() == f


@pytest.mark.parametrize("text", [BRONSTEIN, ADAMCHIK, "sqrt(2)/((x-1)^4+1/16)", "1/(x^4+1)"])
def test_antiderivative_continuity(text):
    f = rf(text)
    assert continuity_violations(integrate_rational(f), f) == []


def test_continuity_check_detects_mathematica_style_jump():
    f = rf(ADAMCHIK)
    jumpy = parse("1/2*atan((-x-1)/(x^2-4))-1/2*atan((x+1)/(x^2-4))")

    class Wrapped:
        def evalf(self, t):
            return E.evalf(jumpy, {"x": t})

    assert continuity_violations(Wrapped(), f, -9.99, 9.99) != []

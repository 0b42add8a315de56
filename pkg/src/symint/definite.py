"""Definite integrals over finite rational intervals.

Endpoint values are exact ConstExprs.  For antiderivatives whose
arctangent arguments have poles inside the interval (typical CAS output),
the jump at each pole is added back from one-sided limits, so the
result matches the true integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra import Poly, RatFun, poly_divmod, poly_shift, sign, squarefree_part
from .constants import ConstExpr, const_evalf, const_normalize
from . import expr as E
from .ratint import AntiDeriv, integrate_rational


class ImproperIntegral(ValueError):
    """The integrand has a real pole in the closed interval."""


class InvalidAntiderivative(ValueError):
    """The supplied antiderivative does not differentiate to the integrand."""


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError("interval needs lo < hi")


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval for one real root; lo == hi marks an exact root."""

    lo: object
    hi: object

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


# -- Sturm sequences ------------------------------------------------------------

def sturm_sequence(p: Poly) -> list:
    seq = [p, p.deriv()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = poly_divmod(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def _variations(seq, x) -> int:
    signs = [sign(s(x)) for s in seq]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count(seq, a, b) -> int:
    """Distinct roots in (a, b) when neither endpoint is a root."""
    return _variations(seq, a) - _variations(seq, b)


def _separate(seq, r, width):
    """delta > 0 such that r is the only root in [r - delta, r + delta]."""
    p = seq[0]
    delta = Fraction(width) / 2
    while p(r - delta) == 0 or p(r + delta) == 0 or _count(seq, r - delta, r + delta) != 1:
        delta /= 2
    return delta


def real_roots_in_interval(p: Poly, I: Interval) -> list:
    """Isolating intervals for the distinct real roots of p in [lo, hi]."""
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    sq = squarefree_part(p)
    if sq.degree < 1:
        return []
    seq = sturm_sequence(sq)
    lo, hi = I.lo, I.hi
    width = hi - lo
    out = []
    a, b = lo, hi
    if sq(lo) == 0:
        out.append(RootInterval(lo, lo))
        a = lo + _separate(seq, lo, width)
    if sq(hi) == 0:
        out.append(RootInterval(hi, hi))
        b = hi - _separate(seq, hi, width)
    stack = [(a, b)] if a < b else []
    while stack:
        a, b = stack.pop()
        n = _count(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(a, b))
            continue
        m = (a + b) / 2
        if sq(m) == 0:
            out.append(RootInterval(m, m))
            d = _separate(seq, m, b - a)
            stack += [(a, m - d), (m + d, b)]
        else:
            stack += [(a, m), (m, b)]
    return sorted(out, key=lambda r: r.lo)


def refine_root(p: Poly, iv: RootInterval, eps) -> RootInterval:
    """Bisect an isolating interval of the squarefree part of p below width eps."""
    if iv.exact:
        return iv
    sq = squarefree_part(p)
    a, b = iv.lo, iv.hi
    sa = sign(sq(a))
    while b - a >= eps:
        m = (a + b) / 2
        sm = sign(sq(m))
        if sm == 0:
            return RootInterval(m, m)
        if sm == sa:
            a = m
        else:
            b = m
    return RootInterval(a, b)


def _neighbourhood(p: Poly, iv: RootInterval, others, width):
    """Open (a, b) around the root in iv, free of other roots of p and of
    every root of the polynomials in ``others``."""
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    oseqs = [sturm_sequence(squarefree_part(q)) for q in others if q.degree > 0]

    def clean(a, b):
        for s in oseqs:
            if s[0](a) == 0 or s[0](b) == 0 or _count(s, a, b) != 0:
                return False
        return True

    if iv.exact:
        r = iv.lo
        d = _separate(seq, r, width)
        while not clean(r - d, r + d):
            d /= 2
        return r - d, r + d
    a, b = iv.lo, iv.hi
    while not clean(a, b):
        iv = refine_root(sq, RootInterval(a, b), (b - a) / 2)
        if iv.exact:
            return _neighbourhood(p, iv, others, width)
        a, b = iv.lo, iv.hi
    return a, b


# -- one-sided values -------------------------------------------------------------

def _side_sign(den: Poly, x, side: int) -> int:
    """Sign of den just to the right (side=+1) or left (side=-1) of a root x."""
    shifted = poly_shift(den, x)
    for j, c in enumerate(shifted.coeffs):
        if c != 0:
            return sign(c) * (side ** j)
    raise ValueError("zero polynomial")


def _atan_at(u: RatFun, x, side: int) -> ConstExpr:
    d = u.den(x)
    if d != 0:
        return ConstExpr.atan(u.num(x) / d)
    s = sign(u.num(x)) * _side_sign(u.den, x, side)
    return ConstExpr.pi(Fraction(s, 2))


def _term_at(kind, u: RatFun, x, side: int) -> ConstExpr:
    if kind == "rat":
        return ConstExpr.rational(u(x))
    if kind == "log":
        v = u(x)
        if v == 0:
            raise ImproperIntegral("log argument vanishes at an endpoint")
        return ConstExpr.log(abs(v))
    return _atan_at(u, x, side)


def _jumps(coeff, u: RatFun, I: Interval) -> ConstExpr:
    """Sum over interior poles s of u of coeff*(atan(u)(s-) - atan(u)(s+))."""
    total = ConstExpr()
    if u.den.degree < 1:
        return total
    for iv in real_roots_in_interval(u.den, I):
        if iv.exact and iv.lo in (I.lo, I.hi):
            continue
        a, b = _neighbourhood(u.den, iv, [u.num], I.hi - I.lo)
        sn = sign(u.num(a))
        left, right = sn * sign(u.den(a)), sn * sign(u.den(b))
        if left != right:
            total = total + ConstExpr.pi(Fraction(left - right, 2) * coeff)
    return total


def _check_poles(f: RatFun, I: Interval):
    if f.den.degree > 0 and real_roots_in_interval(f.den, I):
        raise ImproperIntegral(f"integrand has a pole in [{I.lo}, {I.hi}]")


def _evaluate_terms(terms, I: Interval, split: bool) -> ConstExpr:
    total = ConstExpr()
    for coeff, kind, u in terms:
        val = _term_at(kind, u, I.hi, -1) - _term_at(kind, u, I.lo, +1)
        total = total + val * coeff
        if split and kind == "atan":
            total = total + _jumps(coeff, u, I)
    return const_normalize(total)


def antideriv_terms(F: AntiDeriv) -> list:
    terms = []
    rat = RatFun(F.poly_part) + F.rat_part
    if not rat.is_zero():
        terms.append((Fraction(1), "rat", rat))
    terms += [(t.coeff, "log", RatFun(t.arg)) for t in F.logs]
    terms += [(t.coeff, "atan", t.arg) for t in F.atans]
    return terms


def definite_integrate(f: RatFun, I: Interval) -> ConstExpr:
    """Exact value of the integral of f over I (f pole-free on [lo, hi])."""
    _check_poles(f, I)
    F = integrate_rational(f)
    return _evaluate_terms(antideriv_terms(F), I, split=True)


# -- externally supplied antiderivatives ----------------------------------------

def linear_terms(e: E.Expr, var: str = "x") -> list:
    """Split e into sum coeff * {rational, atan(u), log(u)} pieces in var.

    Variable-free pieces are dropped: they cancel in F(hi) - F(lo).
    """
    if not E.contains_var(e, var):
        return []
    if isinstance(e, E.Neg):
        return [(-c, k, u) for c, k, u in linear_terms(e.arg, var)]
    if isinstance(e, E.Add):
        return linear_terms(e.left, var) + linear_terms(e.right, var)
    if isinstance(e, E.Sub):
        return linear_terms(e.left, var) + [(-c, k, u) for c, k, u in linear_terms(e.right, var)]
    if isinstance(e, E.Mul):
        for const_side, other in ((e.left, e.right), (e.right, e.left)):
            if not E.contains_var(const_side, var):
                v = E.const_value(const_side)
                if v is not None:
                    return [(c * v, k, u) for c, k, u in linear_terms(other, var)]
    if isinstance(e, E.Div) and not E.contains_var(e.right, var):
        v = E.const_value(e.right)
        if v is not None and v != 0:
            return [(c / v, k, u) for c, k, u in linear_terms(e.left, var)]
    if isinstance(e, E.Func) and e.name in ("atan", "log"):
        return [(Fraction(1), e.name, E.expr_to_ratfun(e.arg, var))]
    return [(Fraction(1), "rat", E.expr_to_ratfun(e, var))]


def definite_from_antiderivative(F: E.Expr, f: RatFun, I: Interval, var: str = "x",
                                 split: bool = True) -> ConstExpr:
    """Integral of f over I computed from a given antiderivative F.

    Poles of arctangent arguments inside I are located by root isolation
    and their jumps added back.  ``split=False`` gives the naive
    F(hi) - F(lo), kept as a diagnostic.
    """
    try:
        ok = E.expr_to_ratfun(E.differentiate(F, var), var) == f
        terms = linear_terms(F, var)
    except (E.NotRationalInVar, ZeroDivisionError) as exc:
        raise InvalidAntiderivative(str(exc)) from exc
    if not ok:
        raise InvalidAntiderivative("derivative of F differs from the integrand")
    _check_poles(f, I)
    return _evaluate_terms(terms, I, split=split)


@dataclass(frozen=True)
class OracleCheck:
    exact_value: float
    oracle_value: float
    difference: float
    pi_multiple: int  # nearest integer to difference/pi

    @property
    def agrees(self) -> bool:
        return abs(self.difference) < 1e-8


def compare_with_oracle(value: ConstExpr, f: RatFun, I: Interval, tol: float = 1e-10) -> OracleCheck:
    """Difference between an exact result and adaptive quadrature."""
    from .numeric import quad_oracle

    q = quad_oracle(f, I.lo, I.hi, tol=tol)
    v = float(const_evalf(value, 30))
    diff = v - q.value
    return OracleCheck(v, q.value, diff, int(round(diff / float(mpmath.pi))))

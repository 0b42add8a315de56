"""Indefinite integration of rational functions.

Pipeline: split off the polynomial quotient, run Hermite reduction on the
proper part, then take the logarithmic part of the remaining simple-pole
integrand from the roots of the Rothstein-Trager resultant.  Complex
conjugate log pairs are turned into real arctangents whose arguments are
polynomials, so the result has no spurious jumps on the real line.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .algebra import (
    Gauss,
    MixedFieldError,
    Poly,
    QuadExt,
    RatFun,
    ext_gcd,
    interpolate,
    is_squarefree,
    poly_divmod,
    poly_gcd,
    primitive,
    resultant,
    sign,
    solve_bezout,
    to_mpf,
)
from .algebra.roots import exact_roots, low_degree_factors
from .algebra.scalars import imag_part, radicand, real_part
from . import expr as E


class UnsupportedAlgebraicDegree(Exception):
    """The log part needs roots outside Q or a single Q(sqrt d).

    ``partial`` holds the AntiDeriv assembled so far (without the
    unresolved log terms); ``resultant`` is the offending r(t).
    """

    def __init__(self, message, partial=None, resultant=None):
        super().__init__(message)
        self.partial = partial
        self.resultant = resultant


class NotFullySplit(Exception):
    """The denominator has an irreducible factor of degree >= 3."""


@dataclass(frozen=True)
class LogTerm:
    coeff: object
    arg: Poly

    def __post_init__(self):
        if self.arg.degree < 1:
            raise ValueError("log argument must be nonconstant")

    @property
    def is_complex(self) -> bool:
        return isinstance(self.coeff, Gauss)

    def derivative(self) -> RatFun:
        return RatFun(self.arg.deriv(), self.arg) * self.coeff


@dataclass(frozen=True)
class AtanTerm:
    coeff: object
    arg: RatFun

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("zero arctangent coefficient")
        if self.arg.is_const():
            raise ValueError("arctangent argument must be nonconstant")

    def derivative(self) -> RatFun:
        u = self.arg
        return u.deriv() / (u * u + 1) * self.coeff


@dataclass
class AntiDeriv:
    poly_part: Poly = field(default_factory=Poly)
    rat_part: RatFun = field(default_factory=lambda: RatFun(Poly()))
    logs: list = field(default_factory=list)
    atans: list = field(default_factory=list)

    def _groups(self):
        """Transcendental terms grouped by the radicand of their field.

        Each group is closed under sqrt-conjugation, so its derivative has
        coefficients in the base field even when the terms do not.
        """
        groups: dict[int, list] = {}
        for t in list(self.logs) + list(self.atans):
            d = _term_radicand(t)
            groups.setdefault(d, []).append(t)
        return dict(sorted(groups.items()))

    def derivative(self) -> RatFun:
        total = RatFun(self.poly_part.deriv()) + self.rat_part.deriv()
        for _, terms in self._groups().items():
            g = RatFun(Poly())
            for t in terms:
                g = g + t.derivative()
            total = total + g
        return total

    def to_expr(self, var: str = "x") -> E.Expr:
        out = E.add(E.poly_to_expr(self.poly_part, var), E.ratfun_to_expr(self.rat_part, var)) \
            if not self.rat_part.is_zero() else E.poly_to_expr(self.poly_part, var)
        for d, terms in self._groups().items():
            sub = E.ZERO
            for t in terms:
                sub = E.add(sub, _term_expr(t, var))
            out = E.add(out, sub)
        return out

    def evalf(self, x):
        """mpmath value at x using log|p| for the log terms."""
        x = to_mpf(x) if not isinstance(x, (mpmath.mpf, float, int)) else mpmath.mpf(x)
        v = self.poly_part.evalf(x)
        if not self.rat_part.is_zero():
            v += self.rat_part.evalf(x)
        for t in self.logs:
            v += to_mpf(t.coeff) * mpmath.log(abs(t.arg.evalf(x)))
        for t in self.atans:
            v += to_mpf(t.coeff) * mpmath.atan(t.arg.evalf(x))
        return v

    def __str__(self):
        from .parser import print_expr

        return print_expr(self.to_expr())


def _term_radicand(t) -> int:
    if isinstance(t, LogTerm):
        vals = [t.coeff] + list(t.arg.coeffs)
    else:
        vals = [t.coeff] + list(t.arg.num.coeffs) + list(t.arg.den.coeffs)
    return max((radicand(v) for v in vals), default=1)


def _term_expr(t, var):
    if isinstance(t, LogTerm):
        inner = E.log(E.poly_to_expr(t.arg, var))
    else:
        inner = E.atan(E.ratfun_to_expr(t.arg, var))
    return E.mul(E.const(t.coeff), inner)


# -- Hermite reduction ---------------------------------------------------------

def hermite_reduce(f: RatFun) -> tuple[RatFun, RatFun]:
    """Return (U, A) with U' + A = f and A having a squarefree denominator.

    Linear (Mack) variant: one Bezout solve per level of the squarefree
    decomposition, without factoring the denominator.
    """
    if not f.is_proper() and not f.is_zero():
        raise ValueError("hermite_reduce expects a proper rational function")
    a, d = f.num, f.den
    g = RatFun(Poly())
    dm = poly_gcd(d, d.deriv())
    ds = d // dm
    while dm.degree > 0:
        dm2 = poly_gcd(dm, dm.deriv())
        dms = dm // dm2
        lhs = -(ds * dm.deriv()) // dm
        b, c = solve_bezout(lhs, dms, a)
        a = c - b.deriv() * (ds // dms)
        g = g + RatFun(b, dm)
        dm = dm2
    h = RatFun(a, ds)
    # postcondition, checked on every call
    if g.deriv() + h != f or not is_squarefree(h.den):
        raise ArithmeticError("Hermite reduction postcondition failed")
    return g, h


# -- partial fractions -----------------------------------------------------------

def partial_fractions(A: RatFun, radicand: int | None = None):
    """Residue decomposition of a proper A with squarefree denominator.

    Returns a list of (numerator, factor): numerator is a scalar for a
    linear factor and a Poly of degree <= 1 for an irreducible quadratic.
    Roots may use one extra sqrt(d) (``radicand`` pins d).  Raises
    NotFullySplit when some factor does not split into degree <= 2 pieces.
    """
    d0 = A.radicand
    allowed = {d0} if d0 > 1 else ({radicand} if radicand else None)
    try:
        factors, rest = low_degree_factors(A.den, allowed)
    except MixedFieldError as exc:
        raise NotFullySplit(str(exc)) from exc
    if rest.degree > 0:
        raise NotFullySplit(f"factor of degree {rest.degree} does not split")
    out = []
    try:
        for q in factors:
            cof = A.den // q
            if q.degree == 1:
                r = -q[0]
                out.append((A.num(r) / cof(r), q))
            else:
                s, _, _ = ext_gcd(cof % q, q)
                out.append(((A.num * s) % q, q))
        check = RatFun(Poly())
        for n, q in out:
            check = check + RatFun(n if isinstance(n, Poly) else Poly.const(n), q)
    except MixedFieldError as exc:
        raise NotFullySplit(str(exc)) from exc
    if check != A:
        raise ArithmeticError("partial fraction reconstruction failed")
    return out


# -- Rothstein-Trager -------------------------------------------------------------

def rt_resultant(A: RatFun) -> Poly:
    """r(t) = res_x(d, a - t*d') for monic d, by exact evaluation and interpolation."""
    a, d = A.num, A.den.monic()
    dd = d.deriv()
    n = d.degree
    pts = []
    for k in range(n + 1):
        t = Fraction(k)
        p = a - dd * t
        # res(d, p) = prod p(root) for monic d, whatever deg p is at this t
        pts.append((t, resultant(d, p) if not p.is_zero() else Fraction(0)))
    return interpolate(pts)


def log_part(A: RatFun) -> list:
    """Rothstein-Trager log terms of a proper A with squarefree denominator.

    Real roots c of r(t) give c*log(gcd(a - c d', d)).  A complex pair
    c, conj(c) is returned once, as a LogTerm with the Gauss coefficient
    c (Im c > 0) and its complex gcd as argument; rectify_atan turns such
    terms into real logs and arctangents.
    """
    if A.is_zero():
        return []
    a, d = A.num, A.den
    if not is_squarefree(d) or not A.is_proper():
        raise ValueError("log_part expects a proper A with squarefree denominator")
    r = rt_resultant(A)
    d0 = A.radicand
    allowed = {d0} if d0 > 1 else None
    roots, complete = exact_roots(r, allowed)
    if not complete:
        raise UnsupportedAlgebraicDegree(
            f"resultant {r} has roots outside Q and Q(sqrt d)", resultant=r)
    out = []
    dd = d.deriv()
    try:
        for c in _order_roots(roots):
            if isinstance(c, Gauss):
                if sign(c.im) < 0:
                    continue
            g = poly_gcd(a - dd * c, d)
            if g.degree < 1:
                raise ArithmeticError("root of r(t) gave a trivial gcd")
            if isinstance(c, Gauss):
                out.append(LogTerm(c, g))
            else:
                out.append(LogTerm(c, primitive(g)))
    except MixedFieldError as exc:
        raise UnsupportedAlgebraicDegree(str(exc), resultant=r) from exc
    return out


def _order_roots(roots):
    def key(c):
        return (float(real_part(c)), float(imag_part(c)))

    return sorted(roots, key=key)


def log_to_atan(u: Poly, v: Poly) -> list:
    """Real form of i*log((u + i v)/(u - i v)) as [(coeff, arg Poly), ...].

    Every argument is a polynomial, so each arctangent is continuous on
    the whole real line; the derivative matches the complex log form.
    """
    out = []
    while True:
        q, rem = poly_divmod(u, v)
        if rem.is_zero():
            out.append((Fraction(2), q))
            return out
        if u.degree < v.degree:
            u, v = -v, u
            continue
        # b*dd - a*cc = g
        s, t, g = ext_gcd(v, -u)
        dd, cc = s, t
        arg, r = poly_divmod(u * dd + v * cc, g)
        if not r.is_zero():
            raise ArithmeticError("non-polynomial arctangent argument")
        out.append((Fraction(2), arg))
        u, v = dd, cc


def rectify_atan(pairs) -> tuple[list, list]:
    """Turn complex-pair LogTerms into real (atans, logs).

    (a + bi) log(u + iv) + (a - bi) log(u - iv)
        = a log(u^2 + v^2) + b * [i log((u + iv)/(u - iv))]
    and the bracket is expanded by log_to_atan.
    """
    atans, logs = [], []
    for t in pairs:
        c = t.coeff
        alpha, beta = real_part(c), imag_part(c)
        s = t.arg
        u, v = s.real(), s.imag()
        if alpha != 0:
            logs.append(LogTerm(alpha, primitive(u * u + v * v)))
        for k, arg in log_to_atan(u, v):
            if arg.degree >= 1:
                atans.append(AtanTerm(beta * k, RatFun(arg)))
    return atans, logs


# -- tidy-up ----------------------------------------------------------------------

def _merge_logs(logs):
    merged: dict = {}
    order = []
    for t in logs:
        key = primitive(t.arg)
        if key not in merged:
            merged[key] = 0
            order.append(key)
        merged[key] = merged[key] + t.coeff
    return [LogTerm(merged[k], k) for k in order if merged[k] != 0]


def _canon_atans(atans):
    merged: dict = {}
    for t in atans:
        c, u = t.coeff, t.arg
        if sign(u.num.lc) < 0:
            c, u = -c, -u
        merged[u] = merged.get(u, 0) + c
    out = [AtanTerm(c, u) for u, c in merged.items() if c != 0]

    def key(t):
        u = t.arg
        return (max(u.num.degree, u.den.degree), u.den.degree,
                tuple(float(x) for x in u.num.coeffs[::-1]),
                tuple(float(x) for x in u.den.coeffs[::-1]))

    return sorted(out, key=key)


def _sort_logs(logs):
    return sorted(logs, key=lambda t: (t.arg.degree, tuple(float(x) for x in t.arg.coeffs[::-1]), float(t.coeff)))


def integrate_rational(f: RatFun) -> AntiDeriv:
    """Antiderivative of f; its derivative equals f exactly."""
    q, r = f.split()
    result = AntiDeriv(poly_part=q.integral())
    if r.is_zero():
        return result
    u, a = hermite_reduce(r)
    result.rat_part = u
    if a.is_zero():
        return result
    try:
        terms = log_part(a)
    except UnsupportedAlgebraicDegree as exc:
        exc.partial = result
        raise
    real = [t for t in terms if not t.is_complex]
    pairs = [t for t in terms if t.is_complex]
    atans, more_logs = rectify_atan(pairs)
    result.logs = _sort_logs(_merge_logs(real + more_logs))
    result.atans = _canon_atans(atans)
    return result

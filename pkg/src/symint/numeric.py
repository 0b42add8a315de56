"""Numeric cross-checks: adaptive quadrature, polylog series, point evaluation.

Nothing here feeds symbolic answers; these are independent oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import mpmath
from scipy import integrate as _sp_integrate

from .algebra import RatFun
from .algebra.scalars import to_mpf
from .expr import Expr, PoleAtPoint, evalf, evaluate_exact, NotRationalInVar
from . import expr as E


class NoConvergence(ArithmeticError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    subdivisions: int


def as_float_function(f, var: str = "x"):
    """Float callable for a RatFun, an Expr in ``var``, or a plain callable."""
    if isinstance(f, RatFun):
        num = [float(c) for c in f.num.coeffs]
        den = [float(c) for c in f.den.coeffs]

        def horner(cs, x):
            acc = 0.0
            for c in reversed(cs):
                acc = acc * x + c
            return acc

        return lambda x: horner(num, x) / horner(den, x)
    if isinstance(f, Expr):
        def g(x):
            with mpmath.workdps(20):
                return float(evalf(f, {var: mpmath.mpf(x)}))

        return g
    return f


def quad_oracle(f, lo, hi, tol: float = 1e-10, var: str = "x", limit: int = 200) -> QuadResult:
    """Adaptive Gauss-Kronrod quadrature with an absolute error target ``tol``.

    Raises NoConvergence when the subdivision cap is hit or the error
    estimate exceeds ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    g = as_float_function(f, var)
    out = _sp_integrate.quad(g, float(lo), float(hi), epsabs=tol, epsrel=0.0, limit=limit, full_output=1)
    value, err, info = out[0], out[1], out[2]
    ier = 0 if len(out) == 3 else 1
    if ier or err > tol:
        msg = out[3] if len(out) > 3 else "error estimate above tolerance"
        raise NoConvergence(f"quadrature failed: {msg} (estimate {err:.3g})")
    return QuadResult(float(value), float(err), int(info["last"]))


# -- polylogarithm -------------------------------------------------------------

def _check_polylog_args(s, z):
    if not isinstance(s, int) or s < 1:
        raise DomainError("order s must be an integer >= 1")
    if abs(z) >= 1:
        raise DomainError("series needs |z| < 1")


def polylog_partial(s: int, z: float, n: int) -> tuple[float, float]:
    """Partial sum of z^k/k^s for k <= n, with the geometric tail bound."""
    _check_polylog_args(s, z)
    terms = [z ** k / k ** s for k in range(1, n + 1)]
    az = abs(z)
    bound = az ** (n + 1) / ((n + 1) ** s * (1 - az))
    return math.fsum(terms), bound


def polylog(s: int, z: float, tol: float = 1e-15) -> float:
    """Li_s(z) summed until the tail bound drops below tol."""
    _check_polylog_args(s, z)
    az = abs(z)
    if az == 0:
        return 0.0
    terms = []
    k = 0
    zk = 1.0
    while True:
        k += 1
        zk *= z
        terms.append(zk / k ** s)
        if az ** (k + 1) / ((k + 1) ** s * (1 - az)) <= tol:
            return math.fsum(terms)


# -- point evaluation -------------------------------------------------------------

def _to_decimal(v, digits: int) -> Decimal:
    if v == 0:
        return Decimal(0)
    return Decimal(mpmath.nstr(v, digits, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))


def _exact_or_none(e, env):
    try:
        return evaluate_exact(e, env)
    except (NotRationalInVar, KeyError, ValueError):
        return None  # transcendental subtree: checked numerically instead


def _check_expr_poles(e: Expr, env):
    """Raise PoleAtPoint where a denominator or log argument is exactly zero."""
    probe = None
    if isinstance(e, E.Div):
        probe = e.right
    elif isinstance(e, E.Func) and e.name == "log":
        probe = e.arg
    elif isinstance(e, E.Pow) and e.exp < 0:
        probe = e.base
    if probe is not None and _exact_or_none(probe, env) == 0:
        raise PoleAtPoint(f"singular at {env}")
    for c in E.children(e):
        _check_expr_poles(c, env)


def eval_at(F, x, digits: int = 20, var: str = "x") -> Decimal:
    """Value of an AntiDeriv or Expr at the exact point x, to ``digits`` digits."""
    from .ratint import AntiDeriv

    if digits < 1:
        raise ValueError("digits must be positive")
    x = Fraction(x) if not hasattr(x, "sign") else x
    if isinstance(F, AntiDeriv):
        if not F.rat_part.is_zero() and F.rat_part.den(x) == 0:
            raise PoleAtPoint("pole of the rational part")
        for t in F.logs:
            if t.arg(x) == 0:
                raise PoleAtPoint("log of zero")
        for t in F.atans:
            if t.arg.den(x) == 0:
                raise PoleAtPoint("arctangent argument is infinite")
        with mpmath.workdps(digits + 15):
            return _to_decimal(F.evalf(to_mpf(x)), digits)
    if isinstance(F, Expr):
        _check_expr_poles(F, {var: x})
        with mpmath.workdps(digits + 15):
            return _to_decimal(evalf(F, {var: to_mpf(x)}), digits)
    raise TypeError("eval_at expects an AntiDeriv or an Expr")

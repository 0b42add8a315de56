"""Exact roots and low-degree factors, found numerically and certified exactly.

The numeric stage only proposes candidates: every value returned here has
been checked by exact evaluation or exact division.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath

from .poly import Poly, poly_divmod, squarefree_part
from .scalars import Gauss, QuadExt, sqrt_scalar

_DPS = 80


def numeric_roots(p: Poly, dps: int = _DPS) -> list:
    """All complex roots of p (assumed squarefree) as mpc values."""
    if p.degree < 1:
        return []
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpmathify(_to_mp(c)) for c in reversed(p.coeffs)]
        if p.degree == 1:
            return [-coeffs[1] / coeffs[0]]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps, error=False)
        return [mpmath.mpc(r) for r in roots]


def _to_mp(c):
    from .scalars import to_mpf

    return to_mpf(c)


def identify_real(x, radicands=None, dps: int = _DPS):
    """Guess an exact rational or quadratic irrational equal to the real x.

    ``radicands`` restricts the admissible sqrt(d) (None allows any).
    The guess is *not* certified; callers verify exactly.
    """
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        tol = mpmath.mpf(10) ** (-(dps * 2 // 3))
        if abs(x) < tol:
            return Fraction(0)
        q = _as_fraction(x, tol)
        if q is not None:
            return q
        coeffs = mpmath.findpoly(x, 2, maxcoeff=10**18, tol=tol)
        if not coeffs:
            return None
        if len(coeffs) == 2:
            return Fraction(-int(coeffs[1]), int(coeffs[0]))
        a, b, c = (int(v) for v in coeffs)
        disc = b * b - 4 * a * c
        if disc <= 0:
            return None
        root = sqrt_scalar(Fraction(disc))
        if root is None:
            return None
        for s in (1, -1):
            cand = (Fraction(-b) + s * root) / (2 * a)
            if isinstance(cand, QuadExt):
                if radicands is not None and cand.d not in radicands:
                    return None
            if abs(_to_mp(cand) - x) < tol * (1 + abs(x)):
                return cand
    return None


def _as_fraction(x, tol):
    """Continued-fraction reconstruction of a rational with modest height."""
    man, exp = int(x.man), int(x.exp)
    f = Fraction(man) * Fraction(2) ** exp
    q = f.limit_denominator(10**24)
    if abs(mpmath.mpf(q.numerator) / q.denominator - x) < tol * (1 + abs(x)):
        return q
    return None


def identify_complex(z, radicands=None):
    """Exact candidate for a complex root z, or None."""
    re = identify_real(mpmath.re(z), radicands)
    im = identify_real(mpmath.im(z), radicands)
    if re is None or im is None:
        return None
    try:
        return Gauss.make(re, im)
    except Exception:
        return None


def exact_roots(p: Poly, radicands=None):
    """Distinct exact roots of p, with a flag telling whether all were found.

    Roots are rationals, QuadExt values or Gauss values; each one is
    certified by exact evaluation p(root) == 0.
    """
    sq = squarefree_part(p)
    found = []
    complete = True
    for z in numeric_roots(sq):
        cand = identify_complex(z, radicands)
        try:
            ok = cand is not None and sq(cand) == 0
        except ValueError:  # mixed radicands
            ok = False
        if ok:
            found.append(cand)
        else:
            complete = False
    # conjugate duplicates from numerics collapse here
    uniq = []
    for r in found:
        if not any(r == u for u in uniq):
            uniq.append(r)
    return uniq, complete


def low_degree_factors(p: Poly, radicands=None):
    """Split a squarefree p into factors of degree <= 2 over Q or Q(sqrt d).

    Returns (factors, rest): monic linear/quadratic factors whose product
    times ``rest`` equals monic(p).  ``rest`` has degree 0 when p splits
    completely into such factors.
    """
    rest = p.monic()
    factors = []
    zs = numeric_roots(rest)
    used = [False] * len(zs)
    # linear factors
    for i, z in enumerate(zs):
        if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-40):
            continue
        r = identify_real(mpmath.re(z), radicands)
        if r is None:
            continue
        lin = Poly((-r, 1))
        q, rem = poly_divmod(rest, lin)
        if rem.is_zero():
            factors.append(lin)
            rest = q
            used[i] = True
    # quadratic factors from pairs of remaining roots
    idx = [i for i in range(len(zs)) if not used[i]]
    for i, j in itertools.combinations(idx, 2):
        if used[i] or used[j]:
            continue
        s = zs[i] + zs[j]
        pr = zs[i] * zs[j]
        if abs(mpmath.im(s)) > mpmath.mpf(10) ** (-40) or abs(mpmath.im(pr)) > mpmath.mpf(10) ** (-40):
            continue
        b = identify_real(-mpmath.re(s), radicands)
        c = identify_real(mpmath.re(pr), radicands)
        if b is None or c is None:
            continue
        try:
            quad = Poly((c, b, 1))
            q, rem = poly_divmod(rest, quad)
        except ValueError:
            continue
        if rem.is_zero():
            factors.append(quad)
            rest = q
            used[i] = used[j] = True
    return factors, rest

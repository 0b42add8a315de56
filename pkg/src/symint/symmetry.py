"""Symmetry reductions for definite integrals of expressions in x, sin x, cos x.

Expressions are turned into a kernel form: a fraction of polynomials in
the generators x, s = sin x, c = cos x and pi, with c^2 (or s^2)
eliminated through c^2 + s^2 = 1.  Matching works on that form.

Trigonometric bounds are rational multiples of pi (``PiInterval``).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import Poly, RatFun
from .constants import ConstExpr, const_normalize
from .definite import Interval, definite_integrate
from . import expr as E
from .mpoly import MFrac, MPoly

X, S, C, P = "x", "s", "c", "pi"


class UnsupportedShape(ValueError):
    """No reduction rule applies to this integrand."""


class Parity(Enum):
    EVEN = "Even"
    ODD = "Odd"
    NEITHER = "Neither"


@dataclass(frozen=True)
class PiInterval:
    """The interval [lo*pi, hi*pi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError("interval needs lo < hi")


# -- kernel form ------------------------------------------------------------------

def to_kernel(e: E.Expr, var: str = "x") -> MFrac:
    if isinstance(e, E.Num):
        return MFrac(MPoly.const(e.value))
    if isinstance(e, E.Var):
        if e.name != var:
            raise UnsupportedShape(f"unknown symbol {e.name!r}")
        return MFrac(MPoly.gen(X))
    if isinstance(e, E.Pi):
        return MFrac(MPoly.gen(P))
    if isinstance(e, E.Neg):
        return -to_kernel(e.arg, var)
    if isinstance(e, (E.Add, E.Sub, E.Mul, E.Div)):
        a, b = to_kernel(e.left, var), to_kernel(e.right, var)
        if isinstance(e, E.Add):
            return a + b
        if isinstance(e, E.Sub):
            return a - b
        if isinstance(e, E.Mul):
            return a * b
        return a / b
    if isinstance(e, E.Pow):
        return to_kernel(e.base, var) ** e.exp
    if isinstance(e, E.Func):
        if e.name in ("sin", "cos") and e.arg == E.Var(var):
            return MFrac(MPoly.gen(S if e.name == "sin" else C))
        if e.name == "sqrt":
            v = E.const_value(e)
            if v is not None:
                return MFrac(MPoly.const(v))
        raise UnsupportedShape(f"{e.name}(...) is outside the x, sin x, cos x kernel")
    raise UnsupportedShape(type(e).__name__)


def _one_minus_sq(g):
    return MPoly.const(1) - MPoly.gen(g) ** 2


def _reduce(k: MFrac, g: str, other: str) -> MFrac:
    """Rewrite g^2 as 1 - other^2 in numerator and denominator."""
    return MFrac(k.num.reduce_square(g, _one_minus_sq(other)), k.den.reduce_square(g, _one_minus_sq(other)))


def _eliminate(k: MFrac, g: str, other: str):
    """Remove g from k using g^2 = 1 - other^2; None if g survives."""
    k = _reduce(k, g, other)
    if k.den.degree_in(g) == 1:
        d0, d1 = k.den.coeff_in(g, 0), k.den.coeff_in(g, 1)
        conj = d0 - d1 * MPoly.gen(g)
        k = _reduce(MFrac(k.num * conj, k.den * conj), g, other)
    if k.num.degree_in(g) or k.den.degree_in(g):
        return None
    return k


def _equivalent(a: MFrac, b: MFrac) -> bool:
    diff = a.num * b.den - b.num * a.den
    return diff.reduce_square(C, _one_minus_sq(S)).is_zero()


def _negate_x(k: MFrac) -> MFrac:
    m = {X: -MPoly.gen(X), S: -MPoly.gen(S)}
    return k.map(lambda p: p.subs(m))


def _shift_quarter_turns(k: MFrac, j: int) -> MFrac:
    """Substitute x -> x + j*pi/2."""
    for _ in range(j % 4):
        m = {S: MPoly.gen(C), C: -MPoly.gen(S)}
        k = k.map(lambda p: p.subs(m))
    return k


def _kernel_to_expr(k: MFrac, var: str) -> E.Expr:
    atoms = {X: E.Var(var), S: E.sin(var), C: E.cos(var), P: E.PI}
    from .expr import _mpoly_to_expr

    num = _mpoly_to_expr(k.num, atoms)
    if k.den.is_const():
        return E.mul(E.const(1 / k.den.const_value()), num) if k.den.const_value() != 1 else num
    return E.div(num, _mpoly_to_expr(k.den, atoms))


def _to_poly(p: MPoly, g: str) -> Poly:
    if p.gens() - {g}:
        raise UnsupportedShape("unexpected generator left over")
    coeffs = {}
    for mono, c in p.terms.items():
        coeffs[dict(mono).get(g, 0)] = c
    n = max(coeffs, default=-1)
    return Poly([coeffs.get(i, 0) for i in range(n + 1)])


def _to_ratfun(k: MFrac, g: str) -> RatFun:
    return RatFun(_to_poly(k.num, g), _to_poly(k.den, g))


# -- parity -----------------------------------------------------------------------

def parity(e: E.Expr, var: str = "x") -> Parity:
    k = to_kernel(e, var)
    m = _negate_x(k)
    if _equivalent(m, k):
        return Parity.EVEN
    if _equivalent(m, -k):
        return Parity.ODD
    return Parity.NEITHER


@dataclass(frozen=True)
class Reduction:
    """Outcome of a symmetric-interval reduction.

    kind 'zero': the integral vanishes; 'double': it equals factor times
    the integral of ``integrand`` over [0, a]; 'unchanged': no rule.
    """

    kind: str
    factor: int
    integrand: E.Expr
    lo: object
    hi: object


def symmetric_interval_reduce(e: E.Expr, a, var: str = "x") -> Reduction:
    """Reduce the integral of e over [-a, a] using parity.

    ``a`` is a number, or an Expr such as pi/2 for radian bounds.
    """
    a = a if isinstance(a, E.Expr) else Fraction(a)
    p = parity(e, var)
    if p is Parity.ODD:
        return Reduction("zero", 0, e, -a, a)
    if p is Parity.EVEN:
        return Reduction("double", 2, e, E.ZERO if isinstance(a, E.Expr) else Fraction(0), a)
    return Reduction("unchanged", 1, e, -a, a)


# -- x * f(sin x) -----------------------------------------------------------------

@dataclass(frozen=True)
class XSinForm:
    f: RatFun  # in the formal variable s
    reduced: E.Expr  # (pi/2) * f(sin x)


def _x_free_part(k: MFrac):
    """Return h if k is x times an x-free h, else None."""
    q = MFrac(k.num, k.den * MPoly.gen(X))
    if not (q.num.diff(X) * q.den - q.num * q.den.diff(X)).is_zero():
        return None
    for x0 in range(8):
        at = {X: MPoly.const(x0)}
        den = q.den.subs(at)
        if not den.is_zero():
            return MFrac(q.num.subs(at), den)
    return None


def x_fsin_reduce(e: E.Expr, var: str = "x"):
    """Match e = x*f(sin x) with f rational; returns XSinForm or None."""
    try:
        k = to_kernel(e, var)
    except UnsupportedShape:
        return None
    h = _x_free_part(k)
    if h is None or P in h.num.gens() | h.den.gens():
        return None
    h = _eliminate(h, C, S)
    if h is None:
        return None
    f = _to_ratfun(h, S)
    s_expr = E.ratfun_to_expr(f, var)
    reduced = E.mul(E.Div(E.PI, E.Num(2)), E.substitute(s_expr, var, E.sin(var)))
    return XSinForm(f, reduced)


# -- trigonometric substitution ---------------------------------------------------------

_COS_SIXTHS = {0: Fraction(1), 2: Fraction(1, 2), 3: Fraction(0), 4: Fraction(-1, 2), 6: Fraction(-1),
               8: Fraction(-1, 2), 9: Fraction(0), 10: Fraction(1, 2)}


def cos_pi(q) -> Fraction | None:
    """cos(q*pi) when it is rational, else None."""
    t = Fraction(q) * 6
    if t.denominator != 1:
        return None
    return _COS_SIXTHS.get(t.numerator % 12)


def sin_pi(q) -> Fraction | None:
    return cos_pi(Fraction(1, 2) - Fraction(q))


def trig_to_rational(e: E.Expr, I: PiInterval, var: str = "x"):
    """Rewrite the integral of sin(x)*R(cos x) or cos(x)*R(sin x) over I.

    Returns (g, J) with the integral equal to that of g(y) over J.  When
    the substituted bounds come out in decreasing order they are swapped
    and g is negated.
    """
    k = to_kernel(e, var)
    if k.num.degree_in(X) or k.den.degree_in(X) or P in k.num.gens() | k.den.gens():
        raise UnsupportedShape("integrand depends on x outside sin and cos")
    # sin(x) * R(cos x): y = cos x, dy = -sin x dx
    r = _eliminate(MFrac(k.num, k.den * MPoly.gen(S)), S, C)
    if r is not None:
        a, b = cos_pi(I.lo), cos_pi(I.hi)
        if a is None or b is None:
            raise UnsupportedShape("cos of the bounds is not rational")
        return _oriented(_to_ratfun(r, C), b, a)
    # cos(x) * R(sin x): y = sin x, dy = cos x dx
    r = _eliminate(MFrac(k.num, k.den * MPoly.gen(C)), C, S)
    if r is not None:
        a, b = sin_pi(I.lo), sin_pi(I.hi)
        if a is None or b is None:
            raise UnsupportedShape("sin of the bounds is not rational")
        return _oriented(_to_ratfun(r, S), a, b)
    raise UnsupportedShape("neither sin(x)*R(cos x) nor cos(x)*R(sin x)")


def _oriented(g: RatFun, lo, hi):
    if lo == hi:
        return RatFun(Poly()), Interval(0, 1)
    if lo < hi:
        return g, Interval(lo, hi)
    return -g, Interval(hi, lo)


def _integrate_trig(k: MFrac, I: PiInterval, var: str) -> ConstExpr:
    """Integral of an x-free kernel over I, via parity and substitution."""
    e = _kernel_to_expr(k, var)
    if I.lo == -I.hi:
        red = symmetric_interval_reduce(e, I.hi, var)
        if red.kind == "zero":
            return ConstExpr()
        if red.kind == "double":
            return _integrate_trig(k, PiInterval(0, I.hi), var) * 2
    g, J = trig_to_rational(e, I, var)
    if g.is_zero():
        return ConstExpr()
    return definite_integrate(g, J)


def _split_linear_in_x(k: MFrac):
    """k = x*h + r with h, r free of x; returns (h, r) or None."""
    if k.den.degree_in(X) or k.num.degree_in(X) > 1:
        return None
    h = MFrac(k.num.coeff_in(X, 1), k.den)
    r = MFrac(k.num.coeff_in(X, 0), k.den)
    return h, r


ROUTES = ("lemma", "shift", "direct")


def evaluate_trig_definite(e: E.Expr, I: PiInterval, var: str = "x", route: str = "auto") -> ConstExpr:
    """Exact integral of e over [I.lo*pi, I.hi*pi].

    Integrands may contain x linearly; the x-part is handled by one of
    three routes:
      lemma  -- on [0, pi], x*f(sin x) integrates to (pi/2) * integral of f(sin x);
      shift  -- x = (x - m) + m with m the midpoint; the first piece is odd
                after the substitution u = x - m;
      direct -- substitute u = x - m in the whole integral, then use parity.
    """
    k = to_kernel(e, var)
    parts = _split_linear_in_x(k)
    if parts is None:
        raise UnsupportedShape("integrand is not linear in x")
    h, r = parts
    if P in h.num.gens() | h.den.gens() | r.num.gens() | r.den.gens():
        raise UnsupportedShape("pi inside the integrand")
    total = ConstExpr()
    if not r.num.is_zero():
        total = total + _integrate_trig(r, I, var)
    if h.num.is_zero():
        return const_normalize(total)
    if route == "auto":
        route = "lemma" if (I.lo, I.hi) == (0, 1) and _eliminate(h, C, S) is not None else "shift"
    mid = (I.lo + I.hi) / 2
    half = (I.hi - I.lo) / 2
    m_pi = ConstExpr.pi(mid)
    if route == "lemma":
        if (I.lo, I.hi) != (0, 1) or _eliminate(h, C, S) is None:
            raise UnsupportedShape("lemma route needs x*f(sin x) on [0, pi]")
        total = total + ConstExpr.pi(Fraction(1, 2)) * _integrate_trig(h, I, var)
    elif route in ("shift", "direct"):
        j = mid * 2
        if j.denominator != 1:
            raise UnsupportedShape("midpoint is not a multiple of pi/2")
        hs = _shift_quarter_turns(h, int(j))  # h(u + m)
        # u * h(u + m) over [-w, w] must vanish by oddness
        u_part = MFrac(hs.num * MPoly.gen(X), hs.den)
        if parity(_kernel_to_expr(u_part, var), var) is not Parity.ODD:
            raise UnsupportedShape("shifted x-part is not odd")
        if route == "shift":
            rest = _integrate_trig(h, I, var)
        else:
            rest = _integrate_trig(hs, PiInterval(-half, half), var)
        total = total + m_pi * rest
    else:
        raise ValueError(f"unknown route {route!r}")
    return const_normalize(total)

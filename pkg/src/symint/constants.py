"""Closed-form constants and an equality decision procedure for them.

A ConstExpr is a finite sum of terms ``coeff * pi**k * base`` where base is
1, atan(arg) or log(arg); coefficients and arguments are rationals or
a + b*sqrt(d) values.  With rational data the equality test is exact:
arctangent sums are reduced through products of Gaussian integers, log
sums through a coprime factor base, and what is left is decided with
the transcendence of pi and linear independence of logarithms.  Any
sqrt(d) datum sends the comparison to 150-digit numerics, which only
ever yields Undecided.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from math import gcd, lcm

import mpmath

from .algebra import QuadExt, sign
from .algebra.scalars import is_rational, to_mpf
from . import expr as E

ONE, ATAN, LOG = "one", "atan", "log"
_KIND_ORDER = {ONE: 0, ATAN: 1, LOG: 2}


@dataclass(frozen=True)
class Term:
    coeff: object
    pi_power: int
    kind: str
    arg: object = None

    def key(self):
        return (self.pi_power, self.kind, self.arg)


def _scalar(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, QuadExt) and c.b == 0:
        return c.a
    return c


@dataclass(frozen=True)
class ConstExpr:
    """Sum of ``coeff * pi**k * base`` terms (see module docstring)."""

    terms: tuple = ()

    # -- constructors ---------------------------------------------------
    @classmethod
    def build(cls, rational_part=0, pi_coeff=0, atan_terms=(), log_terms=()):
        ts = [Term(_scalar(rational_part), 0, ONE), Term(_scalar(pi_coeff), 1, ONE)]
        ts += [Term(_scalar(c), 0, ATAN, _scalar(a)) for c, a in atan_terms]
        ts += [Term(_scalar(c), 0, LOG, _scalar(a)) for c, a in log_terms]
        return cls(tuple(t for t in ts if t.coeff != 0))

    @classmethod
    def rational(cls, c):
        return cls.build(rational_part=c)

    @classmethod
    def pi(cls, c=1, power: int = 1):
        c = _scalar(c)
        return cls((Term(c, power, ONE),) if c != 0 else ())

    @classmethod
    def atan(cls, arg, coeff=1):
        return cls((Term(_scalar(coeff), 0, ATAN, _scalar(arg)),))

    @classmethod
    def log(cls, arg, coeff=1):
        arg = _scalar(arg)
        if sign(arg) <= 0:
            raise ValueError("log argument must be positive")
        return cls((Term(_scalar(coeff), 0, LOG, arg),))

    # -- public views ---------------------------------------------------
    def _level0(self, kind):
        return [t for t in self.terms if t.pi_power == 0 and t.kind == kind]

    @property
    def rational_part(self):
        return sum((t.coeff for t in self._level0(ONE)), Fraction(0))

    @property
    def pi_coeff(self):
        return sum((t.coeff for t in self.terms if t.pi_power == 1 and t.kind == ONE), Fraction(0))

    @property
    def atan_terms(self):
        return [(t.coeff, t.arg) for t in self._level0(ATAN)]

    @property
    def log_terms(self):
        return [(t.coeff, t.arg) for t in self._level0(LOG)]

    def is_pi_polynomial(self) -> bool:
        return all(t.kind == ONE for t in self.terms)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return ConstExpr(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ConstExpr(tuple(Term(-t.coeff, t.pi_power, t.kind, t.arg) for t in self.terms))

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            c = _scalar(other)
            return ConstExpr(tuple(Term(t.coeff * c, t.pi_power, t.kind, t.arg) for t in self.terms if t.coeff * c != 0))
        if not isinstance(other, ConstExpr):
            return NotImplemented
        a, b = (self, other) if other.is_pi_polynomial() else (other, self)
        if not b.is_pi_polynomial():
            raise TypeError("product of two transcendental constants is outside ConstExpr")
        out = []
        for s in b.terms:
            for t in a.terms:
                out.append(Term(t.coeff * s.coeff, t.pi_power + s.pi_power, t.kind, t.arg))
        return ConstExpr(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self * (1 / _scalar(other))
        if isinstance(other, ConstExpr):
            o = const_normalize(other)
            if len(o.terms) == 1 and o.terms[0].kind == ONE:
                t = o.terms[0]
                k = t.pi_power
                if any(s.pi_power < k for s in self.terms):
                    raise TypeError("division would create a negative power of pi")
                inv = 1 / t.coeff
                return ConstExpr(tuple(Term(s.coeff * inv, s.pi_power - k, s.kind, s.arg) for s in self.terms))
        raise TypeError("can only divide a ConstExpr by a scalar or c*pi^k")

    def __pow__(self, n: int):
        if n < 0:
            raise TypeError("negative powers are outside ConstExpr")
        out = ConstExpr.rational(1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        from .parser import print_expr

        return print_expr(const_to_expr(self))


def _lift(x):
    if isinstance(x, ConstExpr):
        return x
    if isinstance(x, (int, Fraction, QuadExt)):
        return ConstExpr.rational(x)
    return NotImplemented


def _sort_key(t: Term):
    arg = float(t.arg) if t.arg is not None else 0.0
    return (_KIND_ORDER[t.kind], -t.pi_power if t.kind == ONE else t.pi_power, arg, str(t.arg))


def const_normalize(c: ConstExpr) -> ConstExpr:
    """Canonical form with the same value.

    atan(-x) -> -atan(x); atan(x) for x > 1 -> pi/2 - atan(1/x); atan(1) ->
    pi/4; atan(0) and log(1) dropped; log(x) for x < 1 -> -log(1/x);
    equal terms merged and sorted.
    """
    acc: dict = {}

    def put(coeff, k, kind, arg=None):
        key = (k, kind, arg)
        acc[key] = acc.get(key, 0) + coeff

    for t in c.terms:
        coeff, k, arg = t.coeff, t.pi_power, t.arg
        if t.kind == ONE:
            put(coeff, k, ONE)
        elif t.kind == ATAN:
            s = sign(arg)
            if s == 0:
                continue
            if s < 0:
                coeff, arg = -coeff, -arg
            if arg == 1:
                put(coeff / 4, k + 1, ONE)
            elif arg > 1:
                put(coeff / 2, k + 1, ONE)
                put(-coeff, k, ATAN, _scalar(1 / arg))
            else:
                put(coeff, k, ATAN, arg)
        else:
            if arg == 1:
                continue
            if arg < 1:
                coeff, arg = -coeff, _scalar(1 / arg)
            put(coeff, k, LOG, arg)
    terms = [Term(_scalar(v), k, kind, arg) for (k, kind, arg), v in acc.items() if v != 0]
    return ConstExpr(tuple(sorted(terms, key=_sort_key)))


def arctan_add(a, b) -> ConstExpr:
    """atan(a) + atan(b) as a single arctangent plus the right multiple of pi."""
    a, b = Fraction(a), Fraction(b)
    p = a * b
    if p == 1:
        return ConstExpr.pi(Fraction(sign(a), 2))
    out = ConstExpr.atan((a + b) / (1 - p))
    if p > 1:
        out = out + ConstExpr.pi(sign(a))
    return const_normalize(out)


# -- evaluation -------------------------------------------------------------

def _evalf(c: ConstExpr):
    total = mpmath.mpf(0)
    for t in c.terms:
        v = to_mpf(t.coeff) * mpmath.pi ** t.pi_power
        if t.kind == ATAN:
            v *= mpmath.atan(to_mpf(t.arg))
        elif t.kind == LOG:
            v *= mpmath.log(to_mpf(t.arg))
        total += v
    return total


def const_evalf(c: ConstExpr, dps: int = 50):
    with mpmath.workdps(dps):
        return +_evalf(c)


def const_eval(c: ConstExpr, digits: int) -> Decimal:
    """Decimal value rounded to ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    with mpmath.workdps(digits + 20):
        v = _evalf(c)
        if abs(v) < mpmath.mpf(10) ** (-(digits + 10)) and _structurally_zero(c):
            return Decimal(0)
        return Decimal(mpmath.nstr(v, digits, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))


def _structurally_zero(c):
    return not const_normalize(c).terms


# -- equality -------------------------------------------------------------------

@dataclass(frozen=True)
class Equal:
    reason: str = ""

    def __str__(self):
        return "Equal"


@dataclass(frozen=True)
class NotEqual:
    reason: str = ""

    def __str__(self):
        return "NotEqual"


@dataclass(frozen=True)
class Undecided:
    """Numeric verdict only: ``numerically_equal`` at ``digits`` digits."""

    numerically_equal: bool
    difference: str
    digits: int = 150

    def __str__(self):
        tag = "equal" if self.numerically_equal else "different"
        return f"Undecided(numerically {tag}, |difference| = {self.difference})"


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gpow(a, n):
    r = (1, 0)
    while n:
        if n & 1:
            r = _gmul(r, a)
        n >>= 1
        if n:
            a = _gmul(a, a)
    return r


def _atan_part_over_pi(items):
    """Exact value of sum c*atan(p/q) as a rational multiple of pi, or None.

    With integer weights n = c*L, the sum equals arg(G) mod 2*pi where
    G = prod (q + p i)^n.  Gaussian rationals have arguments that are
    rational multiples of pi only at multiples of pi/4, i.e. iff G^4 is
    real; then the multiple is read off numerically and checked against
    the sign of G^4.
    """
    L = lcm(*(Fraction(c).denominator for c, _ in items))
    num, den = (1, 0), (1, 0)
    total = mpmath.mpf(0)
    with mpmath.workdps(60):
        for c, a in items:
            n = int(Fraction(c) * L)
            a = Fraction(a)
            g = (a.denominator, a.numerator)
            if n > 0:
                num = _gmul(num, _gpow(g, n))
            elif n < 0:
                den = _gmul(den, _gpow(g, -n))
            total += n * mpmath.atan(mpmath.mpf(a.numerator) / a.denominator)
        w = _gmul(num, (den[0], -den[1]))  # same argument as num/den
        w4 = _gpow(w, 4)
        if w4[1] != 0:
            return None
        ratio = 4 * total / mpmath.pi
        m = int(mpmath.nint(ratio))
        if abs(ratio - m) > mpmath.mpf(10) ** -40:
            raise ArithmeticError("arctangent sum failed the pi-multiple consistency check")
        if (w4[0] > 0) != (m % 2 == 0):
            raise ArithmeticError("arctangent sum parity disagrees with the Gaussian product")
    return Fraction(m, 4 * L)


def _coprime_base(nums):
    """Pairwise coprime integers > 1 generating every input multiplicatively."""
    base = []
    for n in nums:
        work = [n]
        while work:
            x = work.pop()
            if x == 1:
                continue
            for i, b in enumerate(base):
                g = gcd(x, b)
                if g > 1:
                    base.pop(i)
                    work += [g, b // g, x // g]
                    break
            else:
                base.append(x)
    # splitting can leave duplicates, and refinement must run to a fixpoint
    changed = True
    while changed:
        changed = False
        base = sorted(set(b for b in base if b > 1))
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = gcd(base[i], base[j])
                if g > 1:
                    x, y = base[i], base[j]
                    base = [b for k, b in enumerate(base) if k not in (i, j)] + [g, x // g, y // g]
                    changed = True
                    break
            if changed:
                break
    return base


def _exponent(n, b):
    e = 0
    while n % b == 0:
        n //= b
        e += 1
    return e, n


def _log_part_vanishes(items) -> bool:
    """True iff sum d*log(s) == 0 for positive rationals s (exact)."""
    fr = [(Fraction(d), Fraction(s)) for d, s in items]
    base = _coprime_base([s.numerator for _, s in fr] + [s.denominator for _, s in fr])
    for b in base:
        total = Fraction(0)
        for d, s in fr:
            e1, _ = _exponent(s.numerator, b)
            e2, _ = _exponent(s.denominator, b)
            total += d * (e1 - e2)
        if total != 0:
            return False
    return True


def _numeric_verdict(diff: ConstExpr) -> Undecided:
    with mpmath.workdps(150 + 20):
        v = abs(_evalf(diff))
        close = v < mpmath.mpf(10) ** -100
        return Undecided(bool(close), mpmath.nstr(v, 5))


def const_equal(c1: ConstExpr, c2: ConstExpr):
    """Equal, NotEqual, or Undecided(numeric verdict)."""
    diff = const_normalize(c1 - c2)
    if not diff.terms:
        return Equal("terms cancel")
    data = [t.coeff for t in diff.terms] + [t.arg for t in diff.terms if t.arg is not None]
    if not all(is_rational(x) for x in data):
        return _numeric_verdict(diff)

    levels = sorted({t.pi_power for t in diff.terms})
    poly: dict = {}  # pi power -> rational coefficient
    residual = []  # levels whose transcendental part does not reduce
    for k in levels:
        ts = [t for t in diff.terms if t.pi_power == k]
        for t in ts:
            if t.kind == ONE:
                poly[k] = poly.get(k, 0) + t.coeff
        atans = [(t.coeff, t.arg) for t in ts if t.kind == ATAN]
        logs = [(t.coeff, t.arg) for t in ts if t.kind == LOG]
        reducible = True
        if atans:
            m = _atan_part_over_pi(atans)
            if m is None:
                reducible = False
            else:
                poly[k + 1] = poly.get(k + 1, 0) + m
        if logs and not _log_part_vanishes(logs):
            reducible = False
        if not reducible:
            residual.append(k)

    if not residual:
        # a polynomial in pi with rational coefficients; pi is transcendental
        if all(v == 0 for v in poly.values()):
            return Equal("Gaussian-integer and factor-base reduction")
        return NotEqual("nonzero polynomial in pi")
    if len(residual) == 1:
        k0 = residual[0]
        support = {k for k, v in poly.items() if v != 0}
        if support <= {k0, k0 + 1}:
            # pi^k0 * (r + q*pi + irreducible atan/log form): a nonvanishing
            # linear form in logarithms of algebraic numbers
            return NotEqual("irreducible arctangent/logarithm combination")
    return _numeric_verdict(diff)


def is_equal(verdict) -> bool:
    return isinstance(verdict, Equal)


# -- conversion to and from Expr ---------------------------------------------------

class NotAConstant(ValueError):
    pass


def expr_to_const(e: E.Expr) -> ConstExpr:
    """ConstExpr for a variable-free expression built from +, -, *, /,
    integer powers, pi, atan, log and sqrt of rationals."""
    v = _try_scalar(e)
    if v is not None:
        return ConstExpr.rational(v)
    if isinstance(e, E.Pi):
        return ConstExpr.pi(1)
    if isinstance(e, E.Var):
        raise NotAConstant(f"free variable {e.name!r}")
    if isinstance(e, E.Neg):
        return -expr_to_const(e.arg)
    if isinstance(e, (E.Add, E.Sub, E.Mul, E.Div)):
        a, b = expr_to_const(e.left), expr_to_const(e.right)
        try:
            if isinstance(e, E.Add):
                return a + b
            if isinstance(e, E.Sub):
                return a - b
            if isinstance(e, E.Mul):
                return a * b
            if b.is_pi_polynomial():
                bn = const_normalize(b)
                if len(bn.terms) == 1 and bn.terms[0].pi_power == 0:
                    return a / bn.terms[0].coeff
            return a / b
        except TypeError as exc:
            raise NotAConstant(str(exc)) from exc
    if isinstance(e, E.Pow):
        if e.exp < 0:
            raise NotAConstant("negative power of a transcendental constant")
        try:
            return expr_to_const(e.base) ** e.exp
        except TypeError as exc:
            raise NotAConstant(str(exc)) from exc
    if isinstance(e, E.Func) and e.name in ("atan", "log"):
        arg = _try_scalar(e.arg)
        if arg is None:
            raise NotAConstant(f"{e.name} of a non-algebraic argument")
        if e.name == "atan":
            return ConstExpr.atan(arg)
        if arg == 0:
            raise NotAConstant("log(0)")
        return ConstExpr.log(abs(arg))
    raise NotAConstant(f"unsupported node {type(e).__name__}")


def _try_scalar(e):
    try:
        return E.const_value(e)
    except (ValueError, ZeroDivisionError) as exc:
        raise NotAConstant(str(exc)) from exc


def _pi_power_expr(k):
    return E.PI if k == 1 else E.Pow(E.PI, k)


def _term_to_expr(t: Term) -> E.Expr:
    base = None
    if t.kind == ATAN:
        base = E.atan(E.const(t.arg))
    elif t.kind == LOG:
        base = E.log(E.const(t.arg))
    c = t.coeff
    if t.pi_power == 0:
        return E.mul(E.const(c), base) if base is not None else E.const(c)
    body = _pi_power_expr(t.pi_power)
    if base is not None:
        body = E.Mul(body, base)
    if isinstance(c, Fraction) and abs(c.numerator) == 1 and c.denominator != 1:
        # pi/4 rather than 1/4*pi
        return E.neg(E.Div(body, E.Num(c.denominator))) if c < 0 else E.Div(body, E.Num(c.denominator))
    return E.mul(E.const(c), body)


def const_to_expr(c: ConstExpr) -> E.Expr:
    """Expression tree for c, e.g. 5/4*pi-atan(2) or pi^2/4."""
    out = None
    for t in c.terms:
        piece = _term_to_expr(t)
        out = piece if out is None else E.add(out, piece)
    return E.ZERO if out is None else out

"""Exact scalars: rationals, real quadratic extensions Q(sqrt d), and their
Gaussian (complex) closure used internally by the log-part algorithm.

Rationals are plain :class:`fractions.Fraction`.  Arithmetic on
:class:`QuadExt` and :class:`Gauss` collapses back to the smaller type
whenever the irrational (resp. imaginary) part vanishes, so a value never
carries a field tag it does not need.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath

Rat = Fraction


class MixedFieldError(ValueError):
    """Arithmetic between Q(sqrt d1) and Q(sqrt d2) with d1 != d2."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s**2 * m and m squarefree, for n >= 1.

    Trial division up to 10**5; the remaining cofactor is assumed
    squarefree unless it is a perfect square.
    """
    if n < 1:
        raise ValueError("n must be positive")
    s, m = 1, 1
    p = 2
    while p * p <= n and p < 100_000:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        else:
            m *= n
    return s, m


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QuadExt:
    """The number a + b*sqrt(d) with a, b rational and d > 1 squarefree."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1:
            raise ValueError("radicand must be > 1")
        self.a = as_rat(a)
        self.b = as_rat(b)
        self.d = int(d)

    @classmethod
    def make(cls, a, b, d):
        """Like the constructor but returns a Fraction when b == 0."""
        b = as_rat(b)
        if b == 0:
            return as_rat(a)
        return cls(a, b, d)

    # -- coercion -------------------------------------------------------
    def _parts(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise MixedFieldError(f"cannot combine sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt.make(self.a + p[0], self.b + p[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt.make(self.a - p[0], self.b - p[1], self.d)

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return QuadExt.make(p[0] - self.a, p[1] - self.b, self.d)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        return QuadExt.make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return QuadExt.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise MixedFieldError(f"cannot combine sqrt({self.d}) and sqrt({other.d})")
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadExt.make(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d b^2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else sb

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


class Gauss:
    """A complex scalar re + i*im with re, im in Q or a single Q(sqrt d).

    Only used inside the logarithmic-part computation; never exposed in
    results.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def make(cls, re, im):
        if im == 0:
            return re
        return cls(re, im)

    @staticmethod
    def _parts(x):
        if isinstance(x, Gauss):
            return x.re, x.im
        if isinstance(x, (int, Fraction, QuadExt)):
            return x, Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return Gauss.make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return Gauss.make(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return Gauss.make(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Gauss.make(self.re * a - self.im * b, self.re * b + self.im * a)

    __rmul__ = __mul__

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        return Gauss.make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Gauss):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, QuadExt)):
            return Gauss.make(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True  # make() never builds a zero imaginary part

    def __repr__(self):
        return f"Gauss({self.re!r}, {self.im!r})"


# -- helpers on any scalar ------------------------------------------------

def radicand(x) -> int:
    """1 for rationals, d for a QuadExt with nonzero irrational part."""
    if isinstance(x, QuadExt) and x.b != 0:
        return x.d
    if isinstance(x, Gauss):
        return max(radicand(x.re), radicand(x.im))
    return 1


def common_radicand(values) -> int:
    d = 1
    for v in values:
        r = radicand(v)
        if r != 1:
            if d not in (1, r):
                raise MixedFieldError(f"cannot combine sqrt({d}) and sqrt({r})")
            d = r
    return d


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, QuadExt) and x.b == 0)


def sign(x) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    if isinstance(x, Gauss):
        raise TypeError("complex scalar has no sign")
    return (x > 0) - (x < 0)


def real_part(x):
    return x.re if isinstance(x, Gauss) else x


def imag_part(x):
    return x.im if isinstance(x, Gauss) else Fraction(0)


def sqrt_scalar(x, allow_new_field: bool = True):
    """Exact square root of a nonnegative scalar, or None if it leaves Q(sqrt d).

    For a rational r the result may open the field Q(sqrt m) with m the
    squarefree part of r; ``allow_new_field=False`` forbids that.
    """
    if isinstance(x, QuadExt) and x.b == 0:
        x = x.a
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x < 0:
            return None
        if x == 0:
            return Fraction(0)
        p, q = x.numerator, x.denominator
        # sqrt(p/q) = sqrt(p*q)/q
        s, m = squarefree_decompose(p * q)
        if m == 1:
            return Fraction(s, q)
        if not allow_new_field:
            return None
        return QuadExt(0, Fraction(s, q), m)
    if isinstance(x, QuadExt):
        # (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 + d v^2 = a, 2uv = b
        disc = x.a * x.a - x.d * x.b * x.b
        r = sqrt_scalar(disc, allow_new_field=False)
        if r is None:
            return None
        for u2 in ((x.a + r) / 2, (x.a - r) / 2):
            u = sqrt_scalar(u2, allow_new_field=False)
            if u is None or u == 0:
                continue
            v = x.b / (2 * u)
            cand = QuadExt.make(u, v, x.d)
            if cand * cand == x:
                return cand if sign(cand) >= 0 else -cand
        return None
    raise TypeError(f"unsupported scalar {x!r}")


def to_mpf(x):
    """Evaluate a real scalar with the current mpmath precision."""
    if isinstance(x, int):
        return mpmath.mpf(x)
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, QuadExt):
        return to_mpf(x.a) + to_mpf(x.b) * mpmath.sqrt(x.d)
    if isinstance(x, Gauss):
        return mpmath.mpc(to_mpf(x.re), to_mpf(x.im))
    raise TypeError(f"unsupported scalar {x!r}")


def format_scalar(x) -> str:
    if isinstance(x, QuadExt):
        if x.b == 0:
            return str(x.a)
        b = "" if x.b == 1 else "-" if x.b == -1 else f"{x.b}*"
        root = f"{b}sqrt({x.d})"
        if x.a == 0:
            return root
        if root.startswith("-"):
            return f"{x.a}{root}"
        return f"{x.a}+{root}"
    if isinstance(x, Gauss):
        return f"({format_scalar(x.re)})+i*({format_scalar(x.im)})"
    return str(x)

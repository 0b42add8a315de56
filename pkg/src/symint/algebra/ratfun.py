"""Reduced rational functions num/den with monic denominator."""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly, poly_divmod, poly_gcd
from .scalars import Gauss, QuadExt


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced: bool = False):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            c = den.lc
            if c != 1:
                num, den = num / c, den / c
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, Poly):
            return cls(x)
        if isinstance(x, (int, Fraction, QuadExt, Gauss)):
            return cls(Poly.const(x))
        raise TypeError(f"cannot convert {x!r} to RatFun")

    @classmethod
    def x(cls):
        return cls(Poly.x())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.is_poly() and self.num.degree <= 0

    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree

    @property
    def radicand(self) -> int:
        from .scalars import common_radicand

        return common_radicand(self.num.coeffs + self.den.coeffs)

    def __eq__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFun.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFun(Poly.const(1)) / (self ** (-n))
        return RatFun(self.num ** n, self.den ** n)

    def deriv(self) -> "RatFun":
        return RatFun(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def evalf(self, x):
        return self.num.evalf(x) / self.den.evalf(x)

    def split(self) -> tuple[Poly, "RatFun"]:
        """Return (q, r) with self = q + r and r proper."""
        q, r = poly_divmod(self.num, self.den)
        return q, RatFun(r, self.den, _reduced=True)

    def compose(self, p: Poly) -> "RatFun":
        return RatFun(self.num.compose(p), self.den.compose(p))

    def __repr__(self):
        return f"RatFun({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"


def rat_normalize(num: Poly, den: Poly) -> RatFun:
    """Reduce num/den: remove the gcd and make the denominator monic."""
    return RatFun(num, den)

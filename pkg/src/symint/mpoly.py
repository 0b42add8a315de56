"""Sparse multivariate polynomials over exact scalars, and fractions of them.

Generators are arbitrary sortable, hashable keys.  Nothing here computes
multivariate gcds: a fraction is a (num, den) pair and equality is tested
by cross multiplication, which is exact.
"""
from __future__ import annotations

from fractions import Fraction


def _mono_mul(m1, m2):
    d = dict(m1)
    for g, e in m2:
        d[g] = d.get(g, 0) + e
    return tuple(sorted((g, e) for g, e in d.items() if e))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c):
        return cls({(): Fraction(c) if isinstance(c, int) else c})

    @classmethod
    def gen(cls, g, power: int = 1):
        return cls({((g, power),): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(m == () for m in self.terms)

    def const_value(self):
        return self.terms.get((), Fraction(0))

    def gens(self):
        return {g for m in self.terms for g, _ in m}

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return (self - _lift(other)).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree_in(self, g) -> int:
        return max((dict(m).get(g, 0) for m in self.terms), default=0)

    def coeff_in(self, g, k: int) -> "MPoly":
        """Coefficient of g**k, as a polynomial in the other generators."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(g, 0) == k:
                d.pop(g, None)
                out[tuple(sorted(d.items()))] = c
        return MPoly(out)

    def subs(self, mapping) -> "MPoly":
        """Substitute generators by MPolys (unlisted generators are kept)."""
        out = MPoly()
        for m, c in self.terms.items():
            t = MPoly.const(c)
            for g, e in m:
                if g in mapping:
                    t = t * mapping[g] ** e
                else:
                    t = t * MPoly.gen(g, e)
            out = out + t
        return out

    def diff(self, g) -> "MPoly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(g, 0)
            if e:
                d[g] = e - 1
                mm = tuple(sorted((k, v) for k, v in d.items() if v))
                out[mm] = out.get(mm, 0) + c * e
        return MPoly(out)

    def reduce_square(self, g, replacement: "MPoly") -> "MPoly":
        """Rewrite every g**2 as ``replacement`` until deg_g <= 1."""
        out = MPoly()
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(g, 0)
            rest = MPoly({tuple(sorted(d.items())): c})
            if e >= 2:
                rest = rest * replacement ** (e // 2)
            if e % 2:
                rest = rest * MPoly.gen(g)
            out = out + rest
        return out

    def leading(self):
        m = max(self.terms)
        return m, self.terms[m]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))

    def __repr__(self):
        return f"MPoly({self.terms!r})"


def _lift(x):
    if isinstance(x, MPoly):
        return x
    return MPoly.const(x)


class MFrac:
    """A fraction num/den of MPolys (not reduced)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = _lift(num)
        self.den = _lift(1 if den is None else den)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def __add__(self, o):
        o = _mlift(o)
        if self.den == o.den:
            return MFrac(self.num + o.num, self.den)
        return MFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return MFrac(-self.num, self.den)

    def __sub__(self, o):
        return self + (-_mlift(o))

    def __mul__(self, o):
        o = _mlift(o)
        return MFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _mlift(o)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return MFrac(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int):
        if n < 0:
            return MFrac(self.den ** (-n), self.num ** (-n))
        return MFrac(self.num ** n, self.den ** n)

    def is_zero(self):
        return self.num.is_zero()

    def equals(self, o) -> bool:
        o = _mlift(o)
        return (self.num * o.den - o.num * self.den).is_zero()

    def map(self, fn) -> "MFrac":
        return MFrac(fn(self.num), fn(self.den))

    def normalized(self) -> "MFrac":
        """Scale so the leading coefficient of the denominator is 1."""
        _, c = self.den.leading()
        if c == 1:
            return self
        return MFrac(self.num * (1 / c), self.den * (1 / c))


def _mlift(x):
    if isinstance(x, MFrac):
        return x
    return MFrac(_lift(x))

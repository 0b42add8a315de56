"""Dense univariate polynomials over exact scalars."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import mpmath

from .scalars import Gauss, QuadExt, common_radicand, imag_part, real_part, to_mpf

ZERO_DEGREE = -1


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Immutable polynomial; ``coeffs[k]`` multiplies ``x**k``.

    The zero polynomial has no coefficients and degree ``ZERO_DEGREE``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        common_radicand(cs)  # rejects mixed Q(sqrt d) coefficient lists
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots):
        p = cls.const(1)
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def radicand(self) -> int:
        return common_radicand(self.coeffs)

    def is_real(self) -> bool:
        return not any(isinstance(c, Gauss) for c in self.coeffs)

    # -- ring operations ---------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, QuadExt, Gauss)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt, Gauss)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        """Division by a scalar."""
        if isinstance(c, Poly):
            if c.degree != 0:
                raise TypeError("use poly_divmod for polynomial division")
            c = c.lc
        return Poly(a / c for a in self.coeffs)

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    # -- evaluation and calculus -------------------------------------------
    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x):
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + to_mpf(c)
        return acc

    def deriv(self):
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def integral(self):
        return Poly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def monic(self):
        if not self.coeffs:
            return self
        return self / self.lc

    def compose(self, other: "Poly"):
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map(self, fn):
        return Poly(fn(c) for c in self.coeffs)

    def real(self):
        return self.map(real_part)

    def imag(self):
        return self.map(imag_part)

    def conjugate(self):
        """Conjugate the sqrt(d) part of every coefficient."""
        return self.map(lambda c: c.conjugate() if isinstance(c, QuadExt) else c)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "x") -> str:
    from .scalars import format_scalar

    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        cs = format_scalar(c)
        if mono:
            if c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                if any(ch in cs[1:] for ch in "+-") or isinstance(c, Gauss):
                    cs = f"({cs})"
                term = f"{cs}*{mono}"
        else:
            term = cs
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a.coeffs)
    db = b.degree
    if len(r) - 1 < db:
        return Poly(), a
    inv = 1 / b.lc if not isinstance(b.lc, int) else Fraction(1, b.lc)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c == 0:
            continue
        for j in range(db + 1):
            r[k + j] = r[k + j] - c * b.coeffs[j]
    return Poly(q), Poly(r[:db])


def _rational_primitive(p: Poly) -> tuple[Fraction, list[int]]:
    """Split a Q[x] polynomial into content times a primitive integer vector."""
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(gcd, ints)
    return Fraction(g, den), [c // g for c in ints]


def _is_rational_poly(p: Poly) -> bool:
    return all(isinstance(c, Fraction) for c in p.coeffs)


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient vectors (lowest first)."""
    r = a[:]
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[k + j] -= lr * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive_ints(v: list[int]) -> list[int]:
    g = reduce(gcd, v)
    if v[-1] < 0:
        g = -g
    return [c // g for c in v]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor.

    Rational inputs use the primitive remainder sequence on integer
    coefficient vectors; extension-field inputs use the monic Euclidean
    sequence.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if _is_rational_poly(a) and _is_rational_poly(b):
        _, u = _rational_primitive(a)
        _, v = _rational_primitive(b)
        if len(u) < len(v):
            u, v = v, u
        while v:
            r = _int_prem(u, v)
            u, v = v, (_primitive_ints(r) if r else [])
        return Poly(Fraction(c) for c in u).monic()
    u, v = a.monic(), b.monic()
    while not v.is_zero():
        u, v = v, (u % v).monic()
    return u


def ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (s, t, g) with s*a + t*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly()
    t0, t1 = Poly(), Poly.const(1)
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return s0, t0, r0
    c = r0.lc
    return s0 / c, t0 / c, r0 / c


def solve_bezout(a: Poly, b: Poly, c: Poly) -> tuple[Poly, Poly]:
    """Solve s*a + t*b = c with deg s < deg b (c must lie in the ideal (a, b))."""
    s, t, g = ext_gcd(a, b)
    q, r = poly_divmod(c, g)
    if not r.is_zero():
        raise ValueError("c is not in the ideal generated by a and b")
    s, t = s * q, t * q
    if not b.is_const():
        quo, s = poly_divmod(s, b)
        t = t + quo * a
    return s, t


def squarefree_factor(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's squarefree decomposition: p = lc(p) * prod f_i**i.

    Returns monic, pairwise coprime, squarefree factors with their
    multiplicities; trivial factors are omitted.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.deriv()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.deriv()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.deriv()
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic()
    return p // poly_gcd(p, p.deriv())


def is_squarefree(p: Poly) -> bool:
    return p.degree <= 0 or poly_gcd(p, p.deriv()).degree == 0


def poly_shift(p: Poly, c) -> Poly:
    """Return q with q(y) = p(y + c), by repeated synthetic division."""
    cs = list(p.coeffs)
    n = len(cs)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            cs[j] = cs[j] + c * cs[j + 1]
    return Poly(cs)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder: lc(b)**(deg a - deg b + 1) * a mod b."""
    delta = a.degree - b.degree + 1
    return poly_divmod(a * (b.lc ** delta), b)[1]


def subresultant_prs(a: Poly, b: Poly) -> tuple[object, list[Poly]]:
    """Resultant of a and b together with their subresultant PRS.

    Requires deg a >= deg b >= 0 (Collins/Brown-Traub recurrences, as laid
    out for the scalar case of the SubResultant algorithm).
    """
    seq = [a, b]
    rs = [None]  # r_i = lc(R_i), indexed from 1
    deltas = [None, a.degree - b.degree]
    betas = [None, (-1) ** (deltas[1] + 1)]
    gammas = [None, Fraction(-1)]
    i = 1
    while not seq[i].is_zero():
        rs.append(seq[i].lc)
        r = _prem(seq[i - 1], seq[i])
        r = r / betas[i]
        seq.append(r)
        i += 1
        dprev = deltas[i - 1]
        g = (-rs[i - 1]) ** dprev * gammas[i - 1] ** (1 - dprev)
        gammas.append(g)
        deltas.append(seq[i - 1].degree - seq[i].degree)
        betas.append(-rs[i - 1] * g ** deltas[i])
    k = i - 1
    prs = seq[: k + 1]
    if seq[k].degree > 0:
        return Fraction(0), prs
    if seq[k - 1].degree == 1:
        return seq[k].lc, prs
    s, c = 1, Fraction(1)
    for j in range(1, k):
        if seq[j - 1].degree % 2 == 1 and seq[j].degree % 2 == 1:
            s = -s
        c = c * (betas[j] / rs[j] ** (1 + deltas[j])) ** seq[j].degree * rs[j] ** (
            seq[j - 1].degree - seq[j + 1].degree
        )
    return s * c * seq[k].lc ** seq[k - 1].degree, prs


def resultant(a: Poly, b: Poly, with_prs: bool = False):
    """res_x(a, b), optionally with the subresultant remainder sequence."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant with the zero polynomial")
    sign = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            sign = -1
    if b.degree == 0:
        val, prs = b.lc ** a.degree, [a, b]
    else:
        val, prs = subresultant_prs(a, b)
    val = val * sign
    return (val, prs) if with_prs else val


def interpolate(points: list[tuple]) -> Poly:
    """Lagrange interpolation through (t, value) pairs, exact."""
    result = Poly()
    for i, (ti, vi) in enumerate(points):
        if vi == 0:
            continue
        basis = Poly.const(1)
        denom = Fraction(1)
        for j, (tj, _) in enumerate(points):
            if j != i:
                basis = basis * Poly((-tj, 1))
                denom = denom * (ti - tj)
        result = result + basis * (vi / denom)
    return result


def primitive(p: Poly) -> Poly:
    """Scale p so its rational (and sqrt-part) coefficients are coprime integers.

    The leading coefficient ends up positive.  For Q(sqrt d) coefficients
    both the rational and irrational parts are cleared jointly.
    """
    if p.is_zero():
        return p
    parts = []
    for c in p.coeffs:
        if isinstance(c, QuadExt):
            parts += [c.a, c.b]
        elif isinstance(c, Gauss):
            raise TypeError("primitive part of a complex polynomial")
        else:
            parts.append(Fraction(c))
    den = lcm(*(q.denominator for q in parts))
    g = reduce(gcd, (int(q * den) for q in parts))
    scale = Fraction(den, g)
    out = p * scale
    from .scalars import sign as _sign

    if _sign(out.lc) < 0:
        out = -out
    return out

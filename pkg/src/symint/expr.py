"""Expression trees, exact differentiation, and conversion to RatFun."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra import Poly, QuadExt, RatFun, sqrt_scalar
from .algebra.scalars import Gauss, sign, to_mpf
from .mpoly import MFrac, MPoly

FUNCTIONS = ("sin", "cos", "atan", "log", "sqrt")


class NotRationalInVar(ValueError):
    """The expression is not a rational function of the variable."""


class UnsupportedNode(ValueError):
    pass


class PoleAtPoint(ZeroDivisionError):
    """Evaluation hit a pole."""


class Expr:
    """Base class of expression nodes.  Nodes are frozen dataclasses."""

    __slots__ = ()

    def __add__(self, o):
        return add(self, as_expr(o))

    def __radd__(self, o):
        return add(as_expr(o), self)

    def __sub__(self, o):
        return sub(self, as_expr(o))

    def __rsub__(self, o):
        return sub(as_expr(o), self)

    def __mul__(self, o):
        return mul(self, as_expr(o))

    def __rmul__(self, o):
        return mul(as_expr(o), self)

    def __truediv__(self, o):
        return div(self, as_expr(o))

    def __rtruediv__(self, o):
        return div(as_expr(o), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n: int):
        return power(self, n)

    def __str__(self):
        from .parser import print_expr

        return print_expr(self)


@dataclass(frozen=True)
class Num(Expr):
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 0:
            raise ValueError("Num holds a nonnegative integer; use const() for other values")


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Pi(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name}")


ZERO = Num(0)
ONE = Num(1)
PI = Pi()


# -- builders with light simplification -------------------------------------

def const(c) -> Expr:
    """Canonical tree for an exact scalar (rational or a + b*sqrt(d))."""
    if isinstance(c, QuadExt):
        root = Func("sqrt", Num(c.d))
        return add(const(c.a), mul(const(c.b), root))
    if isinstance(c, Gauss):
        raise TypeError("complex constants have no expression form")
    c = Fraction(c)
    top = Num(abs(c.numerator))
    if c < 0:
        top = Neg(top)
    if c.denominator == 1:
        return top
    return Div(top, Num(c.denominator))


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, str):
        return Var(x)
    return const(x)


def _num_value(e):
    """Rational value of a purely numeric node, else None."""
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Neg):
        v = _num_value(e.arg)
        return None if v is None else -v
    if isinstance(e, Div):
        a, b = _num_value(e.left), _num_value(e.right)
        if a is not None and b:
            return a / b
    return None


def _is_negated(e) -> bool:
    """True when e prints with a leading minus sign."""
    if isinstance(e, Neg):
        return True
    if isinstance(e, (Mul, Div)):
        return _is_negated(e.left)
    return False


def neg(a: Expr) -> Expr:
    if isinstance(a, Neg):
        return a.arg
    if a == ZERO:
        return ZERO
    # push the sign into the leftmost factor so -6*x prints without parens
    if isinstance(a, Mul):
        return Mul(neg(a.left), a.right)
    if isinstance(a, Div):
        return Div(neg(a.left), a.right)
    return Neg(a)


def add(a: Expr, b: Expr) -> Expr:
    va, vb = _num_value(a), _num_value(b)
    if va is not None and vb is not None:
        return const(va + vb)
    if va == 0:
        return b
    if vb == 0:
        return a
    if _is_negated(b):
        return Sub(a, neg(b))
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    va, vb = _num_value(a), _num_value(b)
    if va is not None and vb is not None:
        return const(va - vb)
    if vb == 0:
        return a
    if va == 0:
        return neg(b)
    if _is_negated(b):
        return Add(a, neg(b))
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    va, vb = _num_value(a), _num_value(b)
    if va is not None and vb is not None:
        return const(va * vb)
    if va == 0 or vb == 0:
        return ZERO
    if va == 1:
        return b
    if vb == 1:
        return a
    if va == -1:
        return neg(b)
    if vb == -1:
        return neg(a)
    if isinstance(a, Neg):
        return neg(mul(a.arg, b))
    if isinstance(b, Neg):
        return neg(mul(a, b.arg))
    if vb is not None:
        return mul(b, a)  # constants first
    if isinstance(b, Mul):
        return mul(mul(a, b.left), b.right)  # left-associate
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    va, vb = _num_value(a), _num_value(b)
    if vb == 0:
        raise ZeroDivisionError("division by zero")
    if va is not None and vb is not None:
        return const(va / vb)
    if va == 0:
        return ZERO
    if vb == 1:
        return a
    if isinstance(a, Neg):
        return neg(div(a.arg, b))
    if isinstance(b, Neg):
        return neg(div(a, b.arg))
    return Div(a, b)


def power(a: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return a
    va = _num_value(a)
    if va is not None and (va != 0 or n > 0):
        return const(va ** n)
    return Pow(a, n)


def func(name: str, arg: Expr) -> Expr:
    if name == "arctan":
        name = "atan"
    return Func(name, arg)


def atan(a) -> Expr:
    return Func("atan", as_expr(a))


def log(a) -> Expr:
    return Func("log", as_expr(a))


def sin(a) -> Expr:
    return Func("sin", as_expr(a))


def cos(a) -> Expr:
    return Func("cos", as_expr(a))


def sqrt(a) -> Expr:
    return Func("sqrt", as_expr(a))


def sum_exprs(items) -> Expr:
    out = ZERO
    for e in items:
        out = add(out, e)
    return out


def poly_to_expr(p: Poly, var: str = "x") -> Expr:
    """Descending-degree sum of c*x^k terms."""
    x = Var(var)
    out = None
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = ONE if k == 0 else x if k == 1 else Pow(x, k)
        if isinstance(c, QuadExt) and c.a != 0:
            term = mul(Add(const(c.a), mul(const(c.b), Func("sqrt", Num(c.d)))) if c.b > 0
                       else Sub(const(c.a), mul(const(-c.b), Func("sqrt", Num(c.d)))), mono)
        else:
            term = mul(const(c), mono)
        if out is None:
            out = term
        else:
            out = add(out, term)
    return ZERO if out is None else out


def ratfun_to_expr(f: RatFun, var: str = "x") -> Expr:
    if f.is_poly():
        return poly_to_expr(f.num, var)
    return div(poly_to_expr(f.num, var), poly_to_expr(f.den, var))


# -- structural queries ---------------------------------------------------

def children(e: Expr):
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    if isinstance(e, (Neg, Func)):
        return (e.arg,)
    if isinstance(e, Pow):
        return (e.base,)
    return ()


def contains_var(e: Expr, var: str) -> bool:
    if isinstance(e, Var):
        return e.name == var
    return any(contains_var(c, var) for c in children(e))


def free_vars(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.name}
    out = set()
    for c in children(e):
        out |= free_vars(c)
    return out


def substitute(e: Expr, var: str, value: Expr) -> Expr:
    if isinstance(e, Var):
        return value if e.name == var else e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, var, value))
    if isinstance(e, Func):
        return Func(e.name, substitute(e.arg, var, value))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, var, value), e.exp)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(substitute(e.left, var, value), substitute(e.right, var, value))
    return e


# -- differentiation ------------------------------------------------------

def differentiate(e: Expr, var: str = "x") -> Expr:
    """Exact symbolic derivative by the sum/product/quotient/chain rules."""
    if isinstance(e, (Num, Pi)):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Neg):
        return neg(differentiate(e.arg, var))
    if isinstance(e, Add):
        return add(differentiate(e.left, var), differentiate(e.right, var))
    if isinstance(e, Sub):
        return sub(differentiate(e.left, var), differentiate(e.right, var))
    if isinstance(e, Mul):
        return add(mul(differentiate(e.left, var), e.right), mul(e.left, differentiate(e.right, var)))
    if isinstance(e, Div):
        du, dv = differentiate(e.left, var), differentiate(e.right, var)
        if dv == ZERO:
            return div(du, e.right)
        return div(sub(mul(du, e.right), mul(e.left, dv)), power(e.right, 2))
    if isinstance(e, Pow):
        db = differentiate(e.base, var)
        if db == ZERO:
            return ZERO
        return mul(mul(Num(e.exp) if e.exp >= 0 else neg(Num(-e.exp)), power(e.base, e.exp - 1)), db)
    if isinstance(e, Func):
        du = differentiate(e.arg, var)
        if du == ZERO:
            return ZERO
        u = e.arg
        if e.name == "sin":
            return mul(du, Func("cos", u))
        if e.name == "cos":
            return neg(mul(du, Func("sin", u)))
        if e.name == "atan":
            return div(du, add(ONE, power(u, 2)))
        if e.name == "log":
            return div(du, u)
        if e.name == "sqrt":
            return div(du, mul(Num(2), e))
    raise UnsupportedNode(f"cannot differentiate {type(e).__name__}")


# -- exact constants and rational functions --------------------------------

def const_value(e: Expr):
    """Exact scalar value of a variable-free algebraic expression, else None."""
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, (Var, Pi)):
        return None
    if isinstance(e, Neg):
        v = const_value(e.arg)
        return None if v is None else -v
    if isinstance(e, (Add, Sub, Mul, Div)):
        a = const_value(e.left)
        if a is None:
            return None
        b = const_value(e.right)
        if b is None:
            return None
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    if isinstance(e, Pow):
        b = const_value(e.base)
        if b is None:
            return None
        return b ** e.exp
    if isinstance(e, Func) and e.name == "sqrt":
        v = const_value(e.arg)
        if v is None:
            return None
        if sign(v) < 0:
            raise ValueError("sqrt of a negative constant")
        return sqrt_scalar(v)
    return None


def expr_to_ratfun(e: Expr, var: str = "x") -> RatFun:
    """Exact reduced rational function equal to e wherever both are defined."""
    if isinstance(e, Num):
        return RatFun(Poly.const(e.value))
    if isinstance(e, Var):
        if e.name == var:
            return RatFun.x()
        raise NotRationalInVar(f"unknown symbol {e.name!r}")
    if isinstance(e, Pi):
        raise NotRationalInVar("pi is not a rational constant")
    if isinstance(e, Neg):
        return -expr_to_ratfun(e.arg, var)
    if isinstance(e, (Add, Sub, Mul, Div)):
        a = expr_to_ratfun(e.left, var)
        b = expr_to_ratfun(e.right, var)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        if b.is_zero():
            raise ZeroDivisionError("division by an identically zero expression")
        return a / b
    if isinstance(e, Pow):
        b = expr_to_ratfun(e.base, var)
        if e.exp < 0 and b.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return b ** e.exp
    if isinstance(e, Func):
        if contains_var(e.arg, var):
            raise NotRationalInVar(f"{e.name} of the variable is transcendental")
        if e.name == "sqrt":
            v = const_value(e)
            if v is not None:
                return RatFun(Poly.const(v))
        raise NotRationalInVar(f"{e.name}(...) is not an algebraic constant")
    raise UnsupportedNode(type(e).__name__)


def expr_equal_as_ratfun(e1: Expr, e2: Expr, var: str = "x") -> bool:
    """True iff both expressions normalize to the same reduced RatFun."""
    return expr_to_ratfun(e1, var) == expr_to_ratfun(e2, var)


# -- evaluation -------------------------------------------------------------

def evaluate_exact(e: Expr, env: dict):
    """Exact value at rational/QuadExt variable values (algebraic nodes only)."""
    if isinstance(e, Num):
        return Fraction(e.value)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Neg):
        return -evaluate_exact(e.arg, env)
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = evaluate_exact(e.left, env), evaluate_exact(e.right, env)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        if b == 0:
            raise PoleAtPoint("division by zero")
        return a / b
    if isinstance(e, Pow):
        b = evaluate_exact(e.base, env)
        if e.exp < 0 and b == 0:
            raise PoleAtPoint("negative power of zero")
        return b ** e.exp
    if isinstance(e, Func) and e.name == "sqrt":
        v = evaluate_exact(e.arg, env)
        r = sqrt_scalar(v)
        if r is None:
            raise ValueError("sqrt leaves the supported fields")
        return r
    raise NotRationalInVar(f"cannot evaluate {type(e).__name__} exactly")


def evalf(e: Expr, env: dict | None = None):
    """mpmath evaluation at the ambient mpmath precision.

    Real logarithms use log|u|, matching the real-antiderivative
    convention used for log terms.
    """
    env = env or {}
    if isinstance(e, Num):
        return mpmath.mpf(e.value)
    if isinstance(e, Var):
        v = env[e.name]
        return v if isinstance(v, (mpmath.mpf, mpmath.mpc)) else to_mpf(v) if not isinstance(v, float) else mpmath.mpf(v)
    if isinstance(e, Pi):
        return +mpmath.pi
    if isinstance(e, Neg):
        return -evalf(e.arg, env)
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = evalf(e.left, env), evalf(e.right, env)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        if b == 0:
            raise PoleAtPoint("division by zero")
        return a / b
    if isinstance(e, Pow):
        b = evalf(e.base, env)
        if e.exp < 0 and b == 0:
            raise PoleAtPoint("negative power of zero")
        return b ** e.exp
    if isinstance(e, Func):
        u = evalf(e.arg, env)
        if e.name == "sin":
            return mpmath.sin(u)
        if e.name == "cos":
            return mpmath.cos(u)
        if e.name == "atan":
            return mpmath.atan(u)
        if e.name == "log":
            if u == 0:
                raise PoleAtPoint("log(0)")
            return mpmath.log(abs(u))
        if e.name == "sqrt":
            return mpmath.sqrt(u)
    raise UnsupportedNode(type(e).__name__)


# -- formal equivalence over opaque atoms -----------------------------------

def _atom_key(e: Expr):
    if isinstance(e, Var):
        return (0, e.name, "")
    if isinstance(e, Pi):
        return (1, "pi", "")
    from .parser import print_expr

    return (2, e.name, print_expr(simplify(e.arg)))


def to_mfrac(e: Expr, atoms: dict | None = None) -> MFrac:
    """Fraction of polynomials whose generators are variables, pi and
    function applications (compared by their simplified argument).

    Square roots of rational constants become exact scalars.
    """
    atoms = {} if atoms is None else atoms
    if isinstance(e, Num):
        return MFrac(MPoly.const(e.value))
    if isinstance(e, (Var, Pi)):
        k = _atom_key(e)
        atoms[k] = e
        return MFrac(MPoly.gen(k))
    if isinstance(e, Neg):
        return -to_mfrac(e.arg, atoms)
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = to_mfrac(e.left, atoms), to_mfrac(e.right, atoms)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        return a / b
    if isinstance(e, Pow):
        return to_mfrac(e.base, atoms) ** e.exp
    if isinstance(e, Func):
        if e.name == "sqrt":
            v = const_value(e)
            if v is not None:
                return MFrac(MPoly.const(v))
        k = _atom_key(e)
        atoms[k] = Func(e.name, simplify(e.arg))
        return MFrac(MPoly.gen(k))
    raise UnsupportedNode(type(e).__name__)


def _mpoly_to_expr(p: MPoly, atoms: dict) -> Expr:
    out = None
    for mono, c in p.sorted_terms():
        term = None
        for g, k in mono:
            f = power(atoms[g], k)
            term = f if term is None else Mul(term, f)
        if term is None:
            piece = const(c)
        elif isinstance(c, QuadExt):
            piece = mul(const(c), term) if c.a == 0 else Mul(const(c), term)
        else:
            piece = mul(const(c), term)
        if out is None:
            out = piece
        else:
            out = add(out, piece)
    return ZERO if out is None else out


def simplify(e: Expr) -> Expr:
    """Expanded num/den form over opaque atoms (no trig identities)."""
    atoms: dict = {}
    f = to_mfrac(e, atoms).normalized()
    num = _mpoly_to_expr(f.num, atoms)
    if f.den.is_const() and f.den.const_value() == 1:
        return num
    return div(num, _mpoly_to_expr(f.den, atoms))


def expr_equivalent(e1: Expr, e2: Expr) -> bool:
    """Formal equality as rational functions of their atoms."""
    atoms: dict = {}
    return to_mfrac(e1, atoms).equals(to_mfrac(e2, atoms))

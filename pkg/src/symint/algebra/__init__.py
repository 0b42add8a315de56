"""Exact scalar and univariate polynomial arithmetic."""
from .poly import (
    ZERO_DEGREE,
    Poly,
    ext_gcd,
    interpolate,
    is_squarefree,
    poly_divmod,
    poly_gcd,
    poly_shift,
    primitive,
    resultant,
    solve_bezout,
    squarefree_factor,
    squarefree_part,
    subresultant_prs,
)
from .ratfun import RatFun, rat_normalize
from .scalars import (
    Gauss,
    MixedFieldError,
    QuadExt,
    Rat,
    format_scalar,
    is_rational,
    sign,
    sqrt_scalar,
    to_mpf,
)

__all__ = [
    "ZERO_DEGREE", "Poly", "RatFun", "QuadExt", "Gauss", "Rat", "MixedFieldError",
    "ext_gcd", "interpolate", "is_squarefree", "poly_divmod", "poly_gcd", "poly_shift",
    "primitive", "resultant", "solve_bezout", "squarefree_factor", "squarefree_part",
    "subresultant_prs", "rat_normalize", "format_scalar", "is_rational", "sign",
    "sqrt_scalar", "to_mpf",
]

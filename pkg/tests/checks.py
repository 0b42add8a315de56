"""Numeric checks shared by several test modules."""
import mpmath


def continuity_violations(F_, f, lo=-10, hi=10, n=1000):
    """Grid steps of F_ that exceed a local variation bound from |f|.

    Steps containing a real pole of f are skipped.
    """
    poles = [float(z.real) for z in mpmath.polyroots([float(c) for c in reversed(f.den.coeffs)],
                                                      maxsteps=200, extraprec=200) if abs(z.imag) < 1e-12]
    xs = [lo + (hi - lo) * k / n for k in range(n + 1)]
    bad = []
    with mpmath.workdps(30):
        vals = [F_.evalf(mpmath.mpf(t)) for t in xs]
        for i in range(n):
            a, b = xs[i], xs[i + 1]
            if any(a - 1e-9 <= p <= b + 1e-9 for p in poles):
                continue
            # step times the max of |f| at the ends and midpoint, with slack
            bound = (b - a) * max(abs(float(f.evalf(t))) for t in (a, (a + b) / 2, b)) * 4 + 1e-9
            if abs(vals[i + 1] - vals[i]) > bound:
                bad.append((a, b))
    return bad

"""sympy helpers shared by tests; kept out of the package on purpose."""

import sympy as sp

t = sp.Symbol("t")


def to_sympy(p):
    return sp.Poly(sum(sp.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(p.coeffs)), t)


def largest_real_root(expr):
    roots = sp.Poly(expr, t).real_roots()
    return max(roots)

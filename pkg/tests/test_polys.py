from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from gaussdio.analytic.polys import (IntPolynomial, NoRealRoot, QSqrt5Polynomial, all_real_roots,
                                     count_roots, isolate_largest_root,
                                     isolate_largest_root_exact, isolate_largest_root_qsqrt5)
from oracles import t, to_sympy

T = IntPolynomial.t()
coeff = st.integers(min_value=-50, max_value=50)


def test_arithmetic_matches_sympy():
    p = IntPolynomial.from_high(3, -2, 0, 5)
    q = IntPolynomial.from_high(1, 4)
    sp_p, sp_q = to_sympy(p), to_sympy(q)
    assert to_sympy(p * q) == sp_p * sp_q
    assert to_sympy(p - q) == sp_p - sp_q
    quo, rem = p.divmod(q)
    squo, srem = sp.div(sp_p, sp_q)
    assert (to_sympy(quo), to_sympy(rem)) == (squo, srem)
    assert to_sympy(p.derivative()) == sp_p.diff(t)
    assert p(Fraction(1, 2)) == sp_p.eval(sp.Rational(1, 2))


@given(st.lists(coeff, min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_sturm_count_matches_sympy(cs):
    p = IntPolynomial(cs)
    sq = to_sympy(p).sqf_part()
    expected = len(set(sq.real_roots()))
    b = p.squarefree().cauchy_bound()
    assert count_roots(p.squarefree(), -b - 1, b + 1) == expected


@given(st.lists(coeff, min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_largest_root_bracket_contains_sympy_root(cs):
    p = IntPolynomial(cs)
    roots = to_sympy(p).real_roots()
    if not roots:
        with pytest.raises(NoRealRoot):
            isolate_largest_root_exact(p)
        return
    lo, hi = isolate_largest_root_exact(p, Fraction(1, 10**6))
    r = max(roots)
    assert sp.Rational(lo.numerator, lo.denominator) < r <= sp.Rational(hi.numerator, hi.denominator)
    assert hi - lo <= Fraction(1, 10**6)


def test_all_real_roots_numpy():
    p = (T - 1) * (T + 2) * (2 * T - 7) * (T**2 + 1)
    brackets = all_real_roots(p, Fraction(1, 10**8))
    ref = sorted(r.real for r in np.roots([float(c) for c in reversed(p.coeffs)]) if abs(r.imag) < 1e-9)
    assert len(brackets) == 3
    for (lo, hi), r in zip(brackets, ref):
        assert float(lo) - 1e-9 <= r <= float(hi) + 1e-9


def test_no_real_root():
    with pytest.raises(NoRealRoot):
        isolate_largest_root(T**2 + 1)
    with pytest.raises(ValueError):
        isolate_largest_root_exact(IntPolynomial([]))


def test_largest_root_sqrt2():
    r = isolate_largest_root(T**2 - 2, 1e-20)
    assert r.lo < 2**0.5 + 1e-15 and r.hi > 2**0.5 - 1e-15
    assert float(r.hi - r.lo) <= 1e-20


def test_qsqrt5_arithmetic():
    r5 = QSqrt5Polynomial(IntPolynomial([]), IntPolynomial([1]))
    assert r5 * r5 == QSqrt5Polynomial.of(5)
    p = 2 * r5 * T - 3
    x = sp.sqrt(5)
    expr = sp.expand((2 * x * t - 3) * (2 * x * t - 3))
    prod = p * p
    assert sp.expand(to_sympy(prod.p0).as_expr() + x * to_sympy(prod.p1).as_expr() - expr) == 0
    assert to_sympy(p.norm()).as_expr() == sp.expand((2 * x * t - 3) * (-2 * x * t - 3))


def test_qsqrt5_root_attribution():
    # p = t - sqrt5 has root sqrt5; its conjugate t + sqrt5 has root -sqrt5
    r5 = QSqrt5Polynomial(IntPolynomial([]), IntPolynomial([1]))
    p = QSqrt5Polynomial.of(T) - r5
    r = isolate_largest_root_qsqrt5(p, Fraction(1, 10**10))
    assert abs(float(r.value) - 5**0.5) < 1e-9
    q = QSqrt5Polynomial.of(T) + r5
    r = isolate_largest_root_qsqrt5(q, Fraction(1, 10**10))
    assert abs(float(r.value) + 5**0.5) < 1e-9

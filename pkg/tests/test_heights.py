import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings

from gaussdio.analytic.heights import (alpha3_conjugate_bound, heights_report,
                                       leading_coefficient_claim, minpoly_and_heights,
                                       p1_coefficients, p2_coefficients, p2_from_factorization,
                                       unit_disk_exact)
from gaussdio.errors import PreconditionError
from gaussdio.gint import GaussianInt
from strategies import large_k

G = GaussianInt
x = sp.Symbol("x")


def test_p1_frozen_k_3_4i():
    assert p1_coefficients(G(3, 4)) == [1, -100, -58, -100, 1]


@pytest.mark.parametrize("k", [G(3, 4), G(20), G(-7, 30)])
def test_p1_matches_resultant(k):
    # w^2 - 2kw + 1 = 0, u^2 - 2 conj(k) u + 1 = 0, |w|^2 = w u, alpha^2 = |w|^2
    w, u, y = sp.symbols("w u y")
    kk = k.re + k.im * sp.I
    inner = sp.resultant(u**2 - 2 * sp.conjugate(kk) * u + 1, w * u - y, u)
    ry = sp.Poly(sp.expand(sp.resultant(w**2 - 2 * kk * w + 1, inner, w)), y)
    mine = sp.Poly(sum(c * y**i for i, c in enumerate(p1_coefficients(k))), y)
    assert ry.monic() == mine.monic()


def even_poly_at(coeffs, v):
    return sum(c * v ** (2 * i) for i, c in enumerate(coeffs))


@settings(max_examples=20)
@given(large_k(18, 400))
def test_p1_p2_vanish_numerically(k):
    with mpmath.workdps(80):
        kk = mpmath.mpc(k.re, k.im)
        a1 = max(abs(kk + mpmath.sqrt(kk * kk - 1)), abs(kk - mpmath.sqrt(kk * kk - 1)))
        a, c = kk - 1, 16 * kk**3 - 4 * kk
        s = 4 * kk * kk - 2 * kk - 1
        r = mpmath.sqrt(a) * mpmath.sqrt(c)
        a2 = max(abs(s + r), abs(s - r))
        v1 = even_poly_at(p1_coefficients(k), a1)
        v2 = even_poly_at(p2_coefficients(k), a2)
        assert abs(v1) < mpmath.mpf(10) ** -50 * a1**8
        assert abs(v2) < mpmath.mpf(10) ** -50 * a2**8


@settings(max_examples=30)
@given(large_k(18, 400))
def test_p2_factorization_and_unit_roots(k):
    assert p2_coefficients(k) == p2_from_factorization(k)
    assert unit_disk_exact(k)


def test_printed_p2_variant_differs_off_diagonal():
    assert p2_coefficients(G(3, 4), printed=True) != p2_coefficients(G(3, 4))
    assert p2_coefficients(G(5, 5), printed=True) == p2_coefficients(G(5, 5))


def test_heights_report():
    assert heights_report(G(3, 4)).passed
    hr = minpoly_and_heights(20)
    assert hr.checks["p2_printed_matches"] is False
    assert all(v for n, v in hr.checks.items() if n != "p2_printed_matches")


def test_heights_other_classes():
    k = G(18, 5)
    assert heights_report(k, k, 4 * k * k + 2 * k - 1).passed
    with pytest.raises(PreconditionError):
        heights_report(k, 2, 3)


def test_leading_coefficient_claim_trivial_class():
    assert leading_coefficient_claim(20)["holds"]


def test_conjugates_small_k():
    r = alpha3_conjugate_bound(20)
    assert r.passed and r.witnesses["count"] == 32
    assert r.witnesses["routes_agree"]
    assert not r.witnesses["headline_claimed"]


def test_conjugates_at_headline():
    r = alpha3_conjugate_bound(10**7 + 1)
    assert r.passed and r.witnesses["headline_claimed"]
    assert r.witnesses["headline_holds"] is True
    r = alpha3_conjugate_bound(G(6 * 10**6, 8 * 10**6 + 1))
    assert r.passed

from fractions import Fraction

import mpmath

from gaussdio.analytic.bw import (CLAIMED_THRESHOLD, K_PRIME_INTEGER, PRINTED_HALF, PRINTED_K_PRIME,
                                  bw_threshold, crossing_point, excess, k_prime)


def test_k_prime_factors():
    assert K_PRIME_INTEGER == 18 * 24 * 81 * 65536**5 * 343
    with mpmath.workdps(50):
        ref = mpmath.mpf(K_PRIME_INTEGER) * mpmath.log(12288)
    assert abs(k_prime().value / ref - 1) < mpmath.mpf(10) ** -35
    assert abs(float(k_prime().value) / float(PRINTED_K_PRIME) - 1) < 1e-4


def test_crossing_frozen():
    lo, hi = crossing_point()
    assert 4.5457371e37 < lo < hi < 4.5457372e37
    assert hi < CLAIMED_THRESHOLD


def test_excess_signs_mpmath_route():
    with mpmath.workdps(60):
        c = mpmath.mpf(PRINTED_HALF.numerator) / PRINTED_HALF.denominator
        f = lambda t: t - 1 - c * mpmath.log(t) ** 2 * mpmath.log(6 * t - 1)
        assert f(mpmath.mpf(4.5e37)) < 0 < f(mpmath.mpf(4.6e37))
    assert (excess(Fraction(CLAIMED_THRESHOLD), PRINTED_HALF) > 0) is True


def test_report():
    r = bw_threshold()
    assert r.passed
    assert all(r.witnesses["checks"].values())

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from gaussdio.analytic.linform import (c_at_least_4b, derivation_check, eval_linear_form,
                                       k_constant, lambda_nonzero_probe, linear_form_report,
                                       pq_bound_check)
from gaussdio.errors import DegenerateK, PreconditionError
from gaussdio.gint import GaussianInt
from strategies import large_k

G = GaussianInt


def real_route(k, m, n):
    """Real-k evaluation with plain mpmath reals (all roots positive)."""
    with mpmath.workdps(60):
        a, b, c = k - 1, k + 1, 16 * k**3 - 4 * k
        s, t = 4 * k * k - 2 * k - 1, 4 * k * k + 2 * k - 1
        ra, rb, rc = mpmath.sqrt(a), mpmath.sqrt(b), mpmath.sqrt(c)
        P = (ra + rc) / ra * (s + ra * rc) ** m
        Q = (rb + rc) / rb * (t + rb * rc) ** n
        rhs = k_constant().value * mpmath.sqrt(a * c) / (s + ra * rc) ** m
        return P, Q, mpmath.log(Q / P), rhs


def test_k_constant():
    assert abs(float(k_constant().value) - 0.622973) < 1e-6
    with mpmath.workdps(60):
        ref = mpmath.mpf(8) / 3 * mpmath.log(mpmath.mpf(24) / 19)
        assert abs(k_constant().value - ref) < mpmath.mpf(10) ** -35


@pytest.mark.parametrize("k,m,n", [(20, 3, 3), (20, 4, 5), (35, 5, 3)])
def test_matches_real_route(k, m, n):
    ev = eval_linear_form(k, 1, 1, m, n)
    P, Q, lam, rhs = real_route(k, m, n)
    with mpmath.workdps(60):
        for got, ref in ((ev.P, P), (ev.Q, Q), (ev.Lambda, lam), (ev.rhs, rhs)):
            assert abs(got.value / ref - 1) < mpmath.mpf(10) ** -30


def test_k20_frozen_and_bound_fails():
    ev = eval_linear_form(20, 1, 1, 3, 3)
    assert abs(float(ev.Lambda.value) - 0.100701099304681) < 1e-14
    assert abs(float(ev.rhs.value) - 3.20395942492043e-8) < 1e-20
    assert ev.log_bound_holds is False
    assert not linear_form_report(20).passed


def test_small_index_not_asserted():
    assert eval_linear_form(20, 1, 1, 2, 3).log_bound_holds is None
    with pytest.raises(PreconditionError):
        pq_bound_check(20, 2, 3)
    with pytest.raises(PreconditionError):
        eval_linear_form(20, 1, 1, -1, 3)


def test_class_checked():
    with pytest.raises(PreconditionError):
        eval_linear_form(20, 2, 2)


@settings(max_examples=10)
@given(large_k(18, 60), st.integers(3, 6), st.integers(3, 6))
def test_pq_lower_bounds(k, m, n):
    assert pq_bound_check(k, m, n).passed


def test_pq_other_class():
    k = G(20)
    assert pq_bound_check(k, 4, 4, 2 * k - 1, 8 * k * k - 1).passed


@settings(max_examples=8)
@given(large_k(18, 60), st.integers(3, 6))
def test_derivation_holds(k, m):
    assert derivation_check(k, m=m).passed


def test_c_at_least_4b():
    assert c_at_least_4b(2) and c_at_least_4b(G(1, 1)) and c_at_least_4b(-2)
    with pytest.raises(DegenerateK):
        c_at_least_4b(1)


def test_nonzero_probe():
    r = lambda_nonzero_probe(G(18, 5))
    assert r.passed
    assert r.witnesses["precisions"] == [128]
    with pytest.raises(PreconditionError):
        lambda_nonzero_probe(20)

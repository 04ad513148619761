import mpmath
import pytest
from hypothesis import given, settings

from gaussdio.analytic.jz import (SYSTEM1, SYSTEM2, cube_criterion, jz_inputs, jz_params,
                                  jz_report, solution_from_d, theta_bounds, vartheta_bounds)
from gaussdio.errors import KTooSmall, NotASolution
from gaussdio.gint import GaussianInt
from strategies import large_k

G = GaussianInt


def float_params(k, variant):
    """Plain mpmath recomputation used as an independent route."""
    a1, a2, T = jz_inputs(G.of(k), variant)
    with mpmath.workdps(40):
        A = lambda z: mpmath.sqrt(z.norm())
        A1, A2, D, AT = A(a1), A(a2), A(a1 - a2), A(T)
        M = max(A1, A2)
        L = 27 * (AT - M) ** 2 / (16 * (A1 * A2 * D) ** 2)
        P = 16 * (A1 * A2 * D) ** 2 / min(A1, A2, D) ** 3 * (2 * AT + 3 * M)
        lam = 1 + mpmath.log(P) / mpmath.log(L) if L > 1 else None
        return L, lam


def test_system2_k100_frozen():
    p = jz_params(100, SYSTEM2)
    assert p.L_gt_1 and p.lam_gt_2
    assert abs(float(p.lam.value) - 2.45425170285001) < 1e-12
    L, lam = float_params(100, SYSTEM2)
    assert abs(p.L.value / L - 1) < mpmath.mpf(10) ** -30
    assert abs(float(p.lam.value) - float(lam)) < 1e-25


def test_system1_k100():
    p = jz_params(100, SYSTEM1)
    assert p.L_gt_1 is False and p.lam is None
    assert abs(float(p.L.value) - 1.55057480204633e-7) < 1e-19
    assert jz_report(100, SYSTEM1).passed


@settings(max_examples=15)
@given(large_k(4, 200))
def test_both_variants_random_k(k):
    assert jz_report(k, SYSTEM1).passed
    assert jz_report(k, SYSTEM2).passed
    L, lam = float_params(k, SYSTEM2)
    assert abs(float(jz_params(k, SYSTEM2).lam.value) - float(lam)) < 1e-20


def test_cube_criterion():
    assert cube_criterion(4)
    assert not cube_criterion(3)
    assert cube_criterion(G(3, 2))


def test_guards():
    with pytest.raises(KTooSmall):
        jz_params(3, SYSTEM1)
    with pytest.raises(KTooSmall):
        jz_params(3, SYSTEM2)
    with pytest.raises(ValueError):
        jz_inputs(G(5), "system3")


def test_theta_bounds_regular_extension():
    s = solution_from_d(20, 80)
    assert s == (G(39), G(41), G(3199))
    r = theta_bounds(20, s)
    assert r.passed and r.inputs["vartheta_checked"]


def test_wrong_forced_branch_fails():
    s = solution_from_d(20, 80)
    assert not theta_bounds(20, s, forced_signs=(-1, None)).passed


def test_theta_complex_k():
    k = G(7, 30)
    s = solution_from_d(k, 4 * k)
    assert theta_bounds(k, s).passed
    assert vartheta_bounds(k, s).passed


def test_theta_rejects_non_solution():
    with pytest.raises(NotASolution):
        theta_bounds(20, (1, 2, 3))
    with pytest.raises(NotASolution):
        solution_from_d(20, 7)
    with pytest.raises(KTooSmall):
        vartheta_bounds(3, solution_from_d(3, 12))


def test_theta_small_k_skips_vartheta():
    r = theta_bounds(3, solution_from_d(3, 12))
    assert r.passed and not r.inputs["vartheta_checked"]

from math import isqrt

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from gaussdio.errors import PreconditionError
from gaussdio.gint import GaussianInt
from gaussdio.lemma_lab import (V, W, BiPoly, Modular, QuadraticSolutionNonsquare, Sandwich,
                                bkroza_norm, bkroza_scan, ckroza_cases, ckroza_scan, d_poly,
                                discriminant_factored, factored_identity, obstruction_for,
                                product_norm, quadratic_in_u, substituted_form)

v, w, u, x, y = sp.symbols("v w u x y")


def to_sympy(p: BiPoly):
    return sum(c * v**i * w**j for (i, j), c in p.as_dict().items())


def test_bipoly_arithmetic_matches_sympy():
    p = 3 * V**2 * W - 7 * W + 2
    q = V - 4 * W**2
    assert sp.expand(to_sympy(p * q) - (3 * v**2 * w - 7 * w + 2) * (v - 4 * w**2)) == 0
    assert sp.expand(to_sympy(p - q) - (3 * v**2 * w - 7 * w + 2 - v + 4 * w**2)) == 0
    assert sp.expand(to_sympy(q**3) - (v - 4 * w**2) ** 3) == 0


def test_discriminant_in_sympy():
    S = u**2 + (32 * v - 10) * u + 160 * v + 256 * v**2 + 9
    eq = sp.Poly(sp.expand(2 * w * S + w**2 - 4096 * u * v), u)
    A, B, C = eq.all_coeffs()
    D = sp.factor(sp.expand((B**2 - 4 * A * C) / 4))
    assert sp.expand(D - to_sympy(discriminant_factored())) == 0
    a, b, c = quadratic_in_u()
    assert [sp.expand(to_sympy(z)) for z in (a, b, c)] == [sp.expand(z) for z in (A, B, C)]


def test_identity_flags():
    ident = factored_identity()
    assert ident["from_quadratic_equals_factored"]
    assert ident["expanded_equals_factored"]
    assert ident["mod_128_reduction"]


def test_substitution_chain_symbolic():
    uu, vv = (1 - 4 * x) ** 2, y**2
    S = uu**2 + (32 * vv - 10) * uu + 160 * vv + 256 * vv**2 + 9
    form = S**2 + 4096 * uu * vv
    prod = (((x - 1) ** 2 + y**2) * ((2 * x - 1) ** 2 + 4 * y**2)
            * ((2 * x + 1) ** 2 + 4 * y**2) * (x**2 + y**2))
    assert sp.expand(form - 4096 * prod) == 0


@given(st.integers(-300, 300), st.integers(-300, 300))
def test_norm_helpers(a, b):
    k = GaussianInt(a, b)
    assert bkroza_norm(a, b) == ((k + 1) * (k - 1)).norm()
    assert product_norm(a, b) == ((4 * k**3 - k) * (k - 1)).norm()
    assert substituted_form(a, b) == 4096 * product_norm(a, b)


def test_obstruction_examples():
    assert obstruction_for(6) == Modular(16, 16, 5)
    assert obstruction_for(14) == Sandwich(144, 128, 7, 2)
    assert obstruction_for(33) == Modular(1, 4, 2)
    assert obstruction_for(32) == QuadraticSolutionNonsquare(16, 5, 16)
    # w = 6: D = 2496 (... ) reduces to 5 mod 16 after dividing by 16
    q = [int(c) // 16 for c in d_poly(6).coeffs]
    assert q[0] % 16 == 5 and all(c % 16 == 0 for c in q[1:])


def test_w_gt_32_negative():
    assert int(d_poly(33)(1)) < 0


def brute_force_has_square(w, vmax):
    p = d_poly(w)
    for vv in range(1, vmax + 1):
        d = int(p(vv))
        if d > 0 and isqrt(d) ** 2 == d:
            return vv
    return None


@pytest.mark.parametrize("w", [wv for wv in range(1, 32)])
def test_brute_force_no_square(w):
    assert brute_force_has_square(w, 3000) is None


def test_w32_double_root_never_odd_square():
    a, b, c = quadratic_in_u()
    A, B = a.at_w(32), b.at_w(32)
    assert d_poly(32).is_zero()
    for vv in range(1, 3000):
        root = -B(vv) / (2 * A(vv))
        assert root == 16 * vv + 5
        assert isqrt(int(root)) ** 2 != root


def test_ckroza_cases_report():
    cases, rep = ckroza_cases()
    assert rep.passed
    assert [c.w for c in cases] == list(range(1, 33))
    assert all(c.ok for c in cases)


def test_scans_and_partition_determinism():
    assert bkroza_scan(40).passed
    assert ckroza_scan(25).passed
    assert bkroza_scan(30, jobs=1).to_json() == bkroza_scan(30, jobs=3).to_json()
    assert ckroza_scan(20, jobs=1).to_json() == ckroza_scan(20, jobs=4).to_json()


def test_scan_rejects_empty_box():
    with pytest.raises(PreconditionError):
        bkroza_scan(0)
    with pytest.raises(PreconditionError):
        ckroza_scan(-3)

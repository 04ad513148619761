import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from gaussdio.gint import (GaussianInt, NotASquare, exact_quotient, gi, gi_abs, gi_arith,
                           gi_divides, gi_divrem, gi_mod, gi_sqrt, gi_sqrt_strict, sorted_gints)
from strategies import big_ints, gaussian, nonzero_gaussian

G = GaussianInt


class TestArithmetic:
    def test_square_of_two_plus_i(self):
        assert gi_arith("mul", G(2, 1), G(2, 1)) == G(3, 4)

    def test_multiplicative_identity(self):
        assert gi_arith("mul", G(-7, 11), 1) == G(-7, 11)

    def test_conjugate(self):
        assert gi_arith("conj", G(3, 4)) == G(3, -4)

    def test_add_sub_neg(self):
        assert gi_arith("add", G(1, 2), G(3, -5)) == G(4, -3)
        assert gi_arith("sub", G(1, 2), G(3, -5)) == G(-2, 7)
        assert gi_arith("neg", G(1, -2)) == G(-1, 2)

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            gi_arith("div", 1, 2)

    def test_binary_needs_rhs(self):
        with pytest.raises(ValueError):
            gi_arith("mul", 1)

    def test_no_overflow(self):
        z = G(10**50, -(10**49))
        assert (z * z).re == 10**100 - 10**98

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            G(2) ** -1

    @given(gaussian(big_ints), gaussian(big_ints))
    def test_norm_multiplicative(self, z, w):
        assert (z * w).norm() == z.norm() * w.norm()

    @given(gaussian(big_ints))
    def test_conj_involution_and_norm(self, z):
        assert z.conj().conj() == z
        assert z.norm() >= 0
        assert (z.norm() == 0) == (z == G(0))
        assert z * z.conj() == G(z.norm())


class TestParsing:
    @pytest.mark.parametrize("text,value", [
        ("3", G(3)), ("-3", G(-3)), ("3i", G(0, 3)), ("-i", G(0, -1)), ("i", G(0, 1)),
        ("1+2i", G(1, 2)), ("1-2i", G(1, -2)), ("-4+i", G(-4, 1)), (" 5 - 7i ", G(5, -7)),
    ])
    def test_parse(self, text, value):
        assert G.parse(text) == value

    @pytest.mark.parametrize("bad", ["", "x", "1+", "2ii", "1.5"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            G.parse(bad)

    @given(gaussian())
    def test_text_round_trip(self, z):
        assert G.parse(str(z)) == z

    @given(gaussian(big_ints))
    def test_json_round_trip_keeps_big_values_exact(self, z):
        obj = z.to_json()
        assert isinstance(obj["re"], str) and isinstance(obj["im"], str)
        assert G.from_json(obj) == z


class TestDivision:
    def test_divrem_example(self):
        q, r = gi_divrem(G(1, 1), 2)
        assert (q, r) == (G(1, 1), G(-1, -1))
        assert r.norm() <= 4 / 2

    def test_unit_divisor(self):
        assert gi_divrem(G(5, -3), 1) == (G(5, -3), G(0))

    def test_exact_integer_case(self):
        assert gi_divrem(6, 3) == (G(2), G(0))

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            gi_divrem(1, 0)
        with pytest.raises(ZeroDivisionError):
            gi_divides(0, 1)

    @given(gaussian(big_ints), nonzero_gaussian)
    def test_divrem_contract(self, num, den):
        q, r = gi_divrem(num, den)
        assert num == q * den + r
        assert 2 * r.norm() <= den.norm()

    @given(gaussian(), nonzero_gaussian)
    def test_ties_symmetric_under_negation(self, num, den):
        q, r = gi_divrem(num, den)
        q2, r2 = gi_divrem(-num, den)
        assert q2 == -q and r2 == -r

    @given(gaussian(), nonzero_gaussian)
    def test_mod_idempotent_and_congruent(self, num, den):
        r = gi_mod(num, den)
        assert gi_mod(r, den) == r
        assert gi_divides(den, num - r)
        assert gi_mod(num + 7 * den, den) == r

    def test_divides_examples(self):
        assert gi_divides(G(1, 1), 2)
        assert gi_divides(G(3, 7), 0)
        assert not gi_divides(2, G(1, 1))

    @given(gaussian(), nonzero_gaussian)
    def test_divides_matches_remainder(self, num, den):
        assert gi_divides(den, num) == (gi_divrem(num, den)[1] == 0)
        assert gi_divides(den, num * den)
        q = exact_quotient(num * den, den)
        assert q == num


class TestSqrt:
    def test_examples(self):
        assert gi_sqrt(G(3, 4)) == G(2, 1)
        assert gi_sqrt(0) == G(0)
        assert gi_sqrt(G(0, 1)) is None
        with pytest.raises(NotASquare):
            gi_sqrt_strict(G(0, 1))

    @given(gaussian(big_ints))
    def test_round_trip(self, z):
        w = gi_sqrt(z * z)
        assert w is not None and w * w == z * z
        assert w == z.principal()
        assert w.re > 0 or (w.re == 0 and w.im >= 0)

    @given(gaussian())
    def test_non_squares_rejected_consistently(self, z):
        w = gi_sqrt(z)
        if w is not None:
            assert w * w == z

    def test_matches_exhaustive_search(self):
        # every square of norm(w) <= 10^4 recovered; no other z in a box is a square
        squares = {}
        r = 100
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                if x * x + y * y <= 10**4:
                    w = G(x, y)
                    squares.setdefault(w * w, w.principal())
        for z, w in squares.items():
            assert gi_sqrt(z) == w
        for a in range(-60, 61):
            for b in range(-60, 61):
                z = G(a, b)
                assert (gi_sqrt(z) is not None) == (z in squares)


class TestAbs:
    def test_pythagorean_exact(self):
        v = gi_abs(G(3, 4))
        assert v.lo == 5 and v.hi == 5

    def test_sqrt2(self):
        v = gi_abs(G(1, 1), 64)
        with mpmath.workprec(200):
            s2 = mpmath.sqrt(2)
            assert v.lo <= s2 <= v.hi
            assert (v.hi - v.lo) / s2 < mpmath.mpf(2) ** -63

    def test_zero(self):
        assert gi_abs(0).hi == 0

    def test_min_precision(self):
        with pytest.raises(ValueError):
            gi_abs(1, 32)

    @given(gaussian(big_ints), st.sampled_from([64, 128, 300]))
    def test_relative_error(self, z, bits):
        v = gi_abs(z, bits)
        with mpmath.workprec(bits + 64):
            exact = mpmath.sqrt(z.norm())
            assert v.lo <= exact <= v.hi
            if exact:
                assert (v.hi - v.lo) / exact < mpmath.mpf(2) ** (1 - bits)


def test_sorted_gints_deterministic():
    vals = [G(3, 4), G(-5), G(0, 5), G(1), G(4, -3)]
    out = sorted_gints(vals)
    assert out[0] == G(1)
    assert [z.norm() for z in out] == sorted(z.norm() for z in vals)
    assert out == sorted_gints(reversed(vals))


def test_gi_constructor():
    assert gi(2, -1) == G(2, -1)
    assert G.of(5) == G(5)
    assert math.isqrt(G(3, 4).norm()) == 5

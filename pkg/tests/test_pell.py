import pytest
from hypothesis import given, settings, strategies as st

from gaussdio.errors import BoundOverflow, KTooSmall, NotASolution, PreconditionError
from gaussdio.gint import GaussianInt
from gaussdio.highprec import HighPrecComplex, ivctx, sqrt_gint
from gaussdio.pell import (Match, PellEquation, SequenceSpec, disk_bound, enumerate_fundamental,
                           family_equation_bc, family_equation_e2, family_sequences, growth_check,
                           intersect_sequences, seq_term, sequence_terms, step_solution,
                           v_spec, w_specs)
from gaussdio.sieve import six_class_set
from strategies import family_k, large_k

G = GaussianInt


def test_equation_invariants():
    with pytest.raises(PreconditionError):
        PellEquation(G(1), G(120), G(10))
    # alpha*gamma square is rejected
    with pytest.raises(PreconditionError):
        PellEquation(G(1), G(0), G(1))
    eq = family_equation_e2(2)
    assert (eq.alpha, eq.gamma, eq.unit) == (G(1), G(120), G(11))
    eq2 = family_equation_bc(2)
    assert (eq2.alpha, eq2.gamma, eq2.unit) == (G(3), G(120), G(19))
    assert eq2.satisfied_by(1, 1)


class TestStep:
    def test_forward_example(self):
        eq = family_equation_e2(2)
        assert step_solution(eq, (1, 1)) == (G(12), G(131))
        assert 131**2 - 120 * 12**2 == -119

    def test_not_a_solution(self):
        with pytest.raises(NotASolution):
            step_solution(family_equation_e2(2), (0, 0))

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            step_solution(family_equation_e2(2), (1, 1), "sideways")

    @given(family_k(200), st.integers(min_value=0, max_value=6), st.sampled_from([1, -1]))
    def test_orbit_closure_and_inverse(self, k, steps, sign):
        eq = family_equation_e2(k)
        sol = (G(1), G(sign))
        for _ in range(steps):
            sol = step_solution(eq, sol)
            assert eq.satisfied_by(*sol)
        for _ in range(steps):
            sol = step_solution(eq, sol, "backward")
        assert sol == (G(1), G(sign))


class TestFundamental:
    def test_k20_contains_six_classes(self):
        sols = enumerate_fundamental(family_equation_e2(20), 20)
        pairs = {(s.x0, s.z0) for s in sols}
        assert {(G(1), G(1)), (G(20), G(1639)), (G(39), G(3199))} <= pairs
        assert 4 * 400 + 40 - 1 == 1639 and 8 * 400 - 1 == 3199

    def test_small_disk_bound(self):
        eq = PellEquation(G(1), G(120), G(11))
        assert disk_bound(eq) == 11

    @given(family_k(300))
    def test_symbolic_classes_solve_e2(self, k):
        eq = family_equation_e2(k)
        for x, z in six_class_set(k):
            assert eq.satisfied_by(x, z)

    def test_overflow_guard(self):
        with pytest.raises(BoundOverflow):
            enumerate_fundamental(family_equation_e2(60), 60, budget=10)

    def test_parallel_equals_serial(self):
        eq = family_equation_e2(G(18, 5))
        assert enumerate_fundamental(eq, jobs=1) == enumerate_fundamental(eq, jobs=3)

    def test_ordered_and_within_disk(self):
        eq = family_equation_e2(G(-20, 3))
        sols = enumerate_fundamental(eq)
        n = disk_bound(eq)
        keys = [(s.x0.sort_key(), s.z0.sort_key()) for s in sols]
        assert keys == sorted(keys)
        assert all(s.x0.norm() <= n and eq.satisfied_by(s.x0, s.z0) for s in sols)
        assert all(s.x0 == s.x0.principal() for s in sols)


class TestSequences:
    def test_v_terms_k2(self):
        assert sequence_terms(v_spec(2), 5) == [G(1), G(3), G(11), G(41), G(153)]

    @given(family_k(1000))
    def test_v3_closed_form(self, k):
        assert seq_term(v_spec(k), 3) == 8 * k**3 - 4 * k**2 - 4 * k + 1

    def test_index_zero(self):
        spec = SequenceSpec(G(7, 1), G(2), G(3))
        assert seq_term(spec, 0) == G(7, 1)
        with pytest.raises(ValueError):
            seq_term(spec, -1)

    def test_k20_initial_pairs(self):
        v, ws = family_sequences(20)
        assert sequence_terms(ws[0], 2) == [G(1), G(1578)]
        assert sequence_terms(ws[3], 2) == [G(20), G(39)]
        assert sequence_terms(ws[5], 2) == [G(39), G(20)]
        assert seq_term(v, 1) == G(39) == seq_term(ws[3], 1)

    def test_guard(self):
        with pytest.raises(KTooSmall):
            family_sequences(5)

    @given(large_k(18, 40), st.integers(min_value=0, max_value=5))
    def test_recurrence(self, k, j):
        spec = w_specs(k)[j]
        t = sequence_terms(spec, 12)
        for n in range(10):
            assert t[n + 2] == spec.coeff * t[n + 1] - t[n]
        assert spec.coeff == 2 * (4 * k * k - 2 * k - 1)

    @settings(max_examples=10)
    @given(large_k(18, 40))
    def test_closed_form_matches_recurrence(self, k):
        # V_n = ((x1 sqrt b + ... ) form) replaced by the eigen-decomposition of the
        # recurrence: roots of X^2 - 2kX + 1 are k ± sqrt(k^2-1)
        prec = 256
        ctx = ivctx(prec)
        root = sqrt_gint(k * k - 1, prec)
        kk = HighPrecComplex.from_gint(k, prec)
        lam1, lam2 = kk + root, kk - root
        v0, v1 = HighPrecComplex.from_gint(G(1), prec), HighPrecComplex.from_gint(2 * k - 1, prec)
        # V_n = A lam1^n + B lam2^n
        den = lam1 - lam2
        A = (v1 - v0 * lam2) / den
        B = (v0 * lam1 - v1) / den
        p1 = HighPrecComplex.from_gint(G(1), prec)
        p2 = HighPrecComplex.from_gint(G(1), prec)
        terms = sequence_terms(v_spec(k), 21)
        for n in range(21):
            approx = A * p1 + B * p2
            exact = HighPrecComplex.from_gint(terms[n], prec)
            err = (approx - exact).abs()
            mag = exact.abs()
            assert (err.iv <= mag.iv * ctx.mpf(2) ** -100) is True
            p1, p2 = p1 * lam1, p2 * lam2


class TestIntersections:
    def test_k20_intersection_values(self):
        k = G(20)
        v, ws = family_sequences(k)
        vals = {}
        for m in intersect_sequences(k, 6, 6):
            vals.setdefault(m.j, set()).add(seq_term(v, m.n))
        big = 8 * k**3 - 4 * k**2 - 4 * k + 1
        assert vals == {1: {G(1)}, 2: {G(1)}, 3: {big}, 4: {2 * k - 1}, 5: {2 * k - 1},
                        6: {2 * k - 1, big}}

    def test_matches_reverify(self):
        k = G(18, 5)
        v, ws = family_sequences(k)
        for mt in intersect_sequences(k, 6, 6):
            w = seq_term(ws[mt.j - 1], mt.m)
            assert seq_term(v, mt.n) == (w if mt.sign == "+" else -w)

    def test_only_small_indices_at_doubled_bounds(self):
        k = G(18, 5)
        assert intersect_sequences(k, 6, 6) == intersect_sequences(k, 12, 12)

    @settings(max_examples=15)
    @given(large_k(18, 60))
    def test_index_relation(self, k):
        for mt in intersect_sequences(k, 10, 10):
            assert mt.m <= mt.n <= 3 * mt.m + 2

    def test_match_json(self):
        assert Match(1, 2, 3, "+").to_json() == {"n": 1, "m": 2, "j": 3, "sign": "+"}


class TestGrowth:
    def test_v_k20(self):
        r = growth_check(v_spec(20), "V", 20, 30)
        assert r.passed

    def test_w_complex(self):
        k = G(3, 18)
        assert growth_check(w_specs(k)[2], "W", k, 20).passed

    def test_guards(self):
        with pytest.raises(KTooSmall):
            growth_check(v_spec(2), "V", 2, 5)
        with pytest.raises(KTooSmall):
            growth_check(w_specs(5)[0], "W", 5, 5)
        with pytest.raises(ValueError):
            growth_check(v_spec(20), "X", 20, 5)

    def test_boundary_index_zero(self):
        r = growth_check(v_spec(20), "V", 20, 0)
        assert r.passed and r.witnesses[0]["index"] == 0

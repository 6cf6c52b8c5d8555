"""Alternating sums: definitions, equivalences, exact zeros, estimates."""

import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from hzeta import (
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    dominating_term_bound,
    s_n_asymptotic,
    s_n_direct,
    s_n_shifted,
    sn_shifted_prefix,
    sn_table,
    stirling_generalized,
    stirling_generalized_exact,
    truncation_bound,
)
from conftest import as_mpc, diff, tol


class TestDirect:
    def test_first_entry_convention(self, cfg30):
        for s, a in ((ComplexPoint(2, 3, 104), "0.3"), (MpReal(5, 104), 1)):
            v = s_n_direct(1, s, a, cfg30)
            assert diff(v.value, 1) == 0
            assert v.cancellation_bits == 0

    def test_two_term_expansion(self, cfg30):
        # S_2 = a^-s - (1+a)^-s
        s = ComplexPoint("1.5", "-2", cfg30.precision_bits)
        a = MpReal("0.6", cfg30.precision_bits)
        v = s_n_direct(2, s, a, cfg30)
        with mp.workprec(cfg30.work_bits):
            want = mpmath.power(a.value, -s.to_mpc()) - mpmath.power(
                1 + a.value, -s.to_mpc()
            )
        assert diff(v.value, want) < tol(-28)

    def test_s_zero_vanishes_from_three(self, cfg30):
        v = s_n_direct(3, MpReal(0, 104), "0.37", cfg30)
        assert as_mpc(v.value) == 0

    def test_exact_vanishing_at_negative_integers(self, cfg30):
        for k in range(0, 9):
            for a in ("0.25", "0.5", "1"):
                for n in (k + 2, k + 3, k + 5):
                    v = s_n_direct(n, MpReal(-k, 104), a, cfg30)
                    assert as_mpc(v.value) == 0, (n, k, a)

    def test_nonzero_just_before_vanishing(self, cfg30):
        # n = k+1 is the boundary: S_{k+1}(-k, a) != 0
        v = s_n_direct(3, MpReal(-2, 104), "0.5", cfg30)
        assert as_mpc(v.value) != 0

    def test_cancellation_reported_grows_linearly(self, cfg30):
        bits_seen = []
        for n in (16, 32, 64, 128):
            bits_seen.append(s_n_direct(n, MpReal(2, 104), 1, cfg30).cancellation_bits)
        assert bits_seen[1] - bits_seen[0] >= 8
        assert bits_seen[2] - bits_seen[1] >= 16
        assert bits_seen[3] - bits_seen[2] >= 40
        # roughly one bit per index
        assert bits_seen[3] >= 100

    def test_domain(self, cfg30):
        with pytest.raises(DomainError):
            s_n_direct(0, MpReal(2, 104), 1, cfg30)
        with pytest.raises(DomainError):
            s_n_direct(2, MpReal(2, 104), 0, cfg30)


class TestShiftedEquivalence:
    def test_shifted_convention_at_one(self, cfg30):
        assert diff(s_n_shifted(1, ComplexPoint(2, 1, 104), "0.3", cfg30), 1) == 0

    def test_two_term(self, cfg30):
        s = MpReal("2.5", 104)
        a = MpReal("0.8", 104)
        d = s_n_direct(2, s, a, cfg30).value
        h = s_n_shifted(2, s, a, cfg30)
        assert diff(d, h) < tol(-28)

    def test_random_draws_match(self, cfg30):
        rng = random.Random(1234)
        for _ in range(40):
            n = rng.randint(2, 120)
            s = ComplexPoint(
                repr(rng.uniform(-8, 8)), repr(rng.uniform(-8, 8)), 104
            )
            a = MpReal(repr(rng.uniform(0.05, 1.0)), 104)
            d = s_n_direct(n, s, a, cfg30).value
            h = s_n_shifted(n, s, a, cfg30)
            with mp.workprec(cfg30.work_bits):
                scale = max(mpf(1), abs(d.to_mpc()))
            assert diff(d, h) <= scale * tol(-24), (n, s, a)

    def test_batch_shifted_prefix_matches_single(self, cfg30):
        s = ComplexPoint(2, 3, 104)
        a = MpReal("0.5", 104)
        batch = sn_shifted_prefix(s, a, 40, cfg30)
        for n in (1, 2, 7, 25, 40):
            single = s_n_shifted(n, s, a, cfg30)
            assert diff(batch[n - 1], single) < tol(-24)


class TestTable:
    def test_matches_single_evaluations(self, cfg30):
        s = ComplexPoint("0.5", 3, 104)
        a = MpReal("0.75", 104)
        table = sn_table(s, a, 60, cfg30)
        assert len(table) == 60
        assert diff(table.value(1), 1) == 0
        for n in (2, 3, 17, 60):
            v = s_n_direct(n, s, a, cfg30).value
            assert diff(table.value(n), v) < tol(-24)

    def test_cache_returns_superset(self, cfg30):
        s = ComplexPoint("1.25", 0, 104)
        a = MpReal(1, 104)
        t1 = sn_table(s, a, 50, cfg30)
        t2 = sn_table(s, a, 30, cfg30)
        assert len(t2) >= 30
        assert diff(t1.value(30), t2.value(30)) == 0

    def test_cancellation_metadata_tracks_index(self, cfg30):
        table = sn_table(ComplexPoint(2, 0, 104), MpReal(1, 104), 128, cfg30)
        assert table.entries[127].cancellation_bits > table.entries[31].cancellation_bits


class TestStirling:
    def test_k_zero_n_one(self):
        assert stirling_generalized_exact(1, 0, Fraction(1, 3)) == 1

    def test_first_nontrivial(self):
        # S_2(-1, a) = a - (1+a) = -1 for every shift
        for a in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
            assert stirling_generalized_exact(2, 1, a) == -1

    def test_vanishing_region(self):
        for k in range(0, 9):
            for n in range(k + 2, k + 5):
                assert stirling_generalized_exact(n, k, Fraction(1, 4)) == 0

    @pytest.mark.parametrize("a_fr", [Fraction(1, 4), Fraction(1, 2), Fraction(1)])
    def test_matches_direct_sums(self, a_fr, cfg30):
        a = MpReal(a_fr, 104)
        for n in range(1, 13):
            for k in range(0, 9):
                exact = stirling_generalized_exact(n, k, a_fr)
                v = s_n_direct(n, MpReal(-k, 104), a, cfg30).value
                assert diff(v, MpReal(exact, 300)) < tol(-25), (n, k)

    def test_wrapped_variant_rounds(self):
        v = stirling_generalized(4, 3, MpReal("0.25", 150))
        want = stirling_generalized_exact(4, 3, Fraction(1, 4))
        assert diff(v, MpReal(want, 200)) < tol(-40)


class TestAsymptotic:
    def test_unit_shift_substitution(self):
        # at a = 1, s = 2: estimate = log(n)/n (Gamma(2) = 1)
        n = 10**4
        v = s_n_asymptotic(n, MpReal(2, 150), MpReal(1, 150))
        with mp.workprec(200):
            want = mpmath.log(n) / n
        assert diff(v, want) < tol(-40)

    def test_interior_shift_integer_s(self):
        # a = 0.5, s = 2: Gamma(0.5) log(n) / (sqrt(n) 1!)
        n = 500
        v = s_n_asymptotic(n, MpReal(2, 150), MpReal("0.5", 150))
        with mp.workprec(200):
            want = mpmath.gamma(mpf("0.5")) * mpmath.log(n) / mpmath.sqrt(n)
        assert diff(v, want) < tol(-38)

    def test_ratio_to_direct_value_in_band(self, cfg30):
        # logarithmic convergence: expect the scale, not the digits
        n = 4000
        s = MpReal("1.5", 104)
        table = sn_table(s, MpReal(1, 104), n, cfg30)
        est = s_n_asymptotic(n, s, MpReal(1, 104))
        with mp.workprec(cfg30.work_bits):
            ratio = abs(table.value(n).to_mpc() / est.to_mpc())
        assert 0.3 < float(ratio) < 3.0

    def test_rejections(self):
        with pytest.raises(DomainError):
            s_n_asymptotic(2, MpReal(2, 128), MpReal(1, 128))
        with pytest.raises(DomainError):
            s_n_asymptotic(100, MpReal(-3, 128), MpReal("0.5", 128))
        with pytest.raises(DomainError):
            s_n_asymptotic(100, MpReal("-0.5", 128), MpReal("0.5", 128))


class TestDominatingBound:
    def test_printed_peak_value_at_two(self):
        # peak factor at n=2: (2/3) / sqrt(3)
        b = dominating_term_bound(2, MpReal(2, 150), MpReal("0.9", 150))
        with mp.workprec(200):
            peak = (mpf(2) / 3) / mpmath.sqrt(3)
            want = peak * mpmath.gamma(2) / (mpf("0.4") ** 2 * 3)
        assert diff(b, want) < tol(-40)

    @pytest.mark.parametrize("a_txt", ["0.9", "0.5", "0.3"])
    def test_monotone_decreasing(self, a_txt):
        prev = None
        for n in range(2, 200, 7):
            b = dominating_term_bound(n, MpReal(2, 150), MpReal(a_txt, 150))
            assert b.value > 0
            if prev is not None:
                assert b.value < prev
            prev = b.value

    def test_series_summability(self):
        # bound(n) * n^{3/2} stays bounded for a > 1/2 (comparison test)
        vals = []
        for n in (10, 100, 1000, 10000):
            b = dominating_term_bound(n, MpReal(2, 150), MpReal("0.9", 150))
            vals.append(float(b.value) * n**1.5)
        assert max(vals) < 10 * min(vals) + 10

    def test_small_shift_branch_positive_and_decaying(self):
        b1 = dominating_term_bound(10, MpReal(2, 150), MpReal("0.2", 150))
        b2 = dominating_term_bound(1000, MpReal(2, 150), MpReal("0.2", 150))
        assert b1.value > b2.value > 0

    def test_wrapper_type(self):
        tb = truncation_bound(5, MpReal(2, 150), MpReal("0.8", 150))
        assert tb.n == 5
        assert tb.bound.value > 0

    def test_domain(self):
        with pytest.raises(DomainError):
            dominating_term_bound(1, MpReal(2, 128), MpReal(1, 128))
        with pytest.raises(DomainError):
            dominating_term_bound(5, MpReal(-1, 128), MpReal(1, 128))


class TestInternalPrecisionPolicy:
    def test_results_survive_deep_cancellation(self, cfg30):
        # n = 256 loses ~256 bits to cancellation yet the output is stable
        v1 = s_n_direct(256, MpReal(2, 104), 1, cfg30)
        v2 = sn_table(ComplexPoint(2, 0, 104), MpReal(1, 104), 256, cfg30).value(256)
        assert v1.cancellation_bits > 200
        assert diff(v1.value, v2) < tol(-24)

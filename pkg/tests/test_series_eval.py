"""Series representations and their truncation accounting."""

from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from hzeta import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    phi_integral,
    phi_series,
    phi_shifted_integral,
    phi_shifted_series,
    series_term,
    weight_main,
    weight_shifted_printed,
)
from conftest import diff, tol


def run_series(fn, *args):
    """Series evaluators raise when the certified tail misses the target;
    both outcomes carry the result."""
    try:
        return fn(*args), True
    except AccuracyError as exc:
        return exc.result, False


class TestWeights:
    def test_weight_identity_exact(self):
        # main(a) - printed-shifted(a) = (2a-1)/n, exactly
        for n in (1, 2, 5, 17):
            for a_fr in (Fraction(1, 4), Fraction(1, 2), Fraction(9, 10)):
                a = MpReal(a_fr, 150)
                w_m = weight_main(n, a)
                w_p = weight_shifted_printed(n, a)
                got = (w_m - w_p).value
                with mp.workprec(200):
                    want = (2 * mpf(a_fr.numerator) / a_fr.denominator - 1) / n
                assert diff(got, want) < tol(-40)

    def test_first_term_values(self, cfg30):
        # variant diagnostics at n = 1 keep the conventional S_1 = 1
        a = MpReal("0.3", cfg30.precision_bits)
        t_main = series_term(1, 2, a, "main", cfg30)
        with mp.workprec(cfg30.work_bits):
            want = mpf(1) / 2 + (a.value - 1)
        assert diff(t_main, want) < tol(-27)

    def test_third_term_vanishes_at_s_zero(self, cfg30):
        for variant in ("main", "shifted"):
            v = series_term(3, 0, "0.4", variant, cfg30)
            assert diff(v, 0) == 0

    def test_unknown_variant(self, cfg30):
        with pytest.raises(DomainError):
            series_term(1, 2, 1, "bogus", cfg30)


class TestMainSeries:
    def test_phi_at_one_matches_limit(self, cfg20):
        cfg = EvalConfig.from_digits(20, target_tol=MpReal("1e-6", 128))
        r, ok = run_series(phi_series, 1, 1, cfg)
        assert diff(r.phi, 1) <= r.err_estimate.value
        assert r.pole

    def test_basel_within_reported_error(self, cfg20):
        r, ok = run_series(phi_series, 2, 1, EvalConfig.from_digits(20))
        with mp.workprec(300):
            want = mpmath.pi**2 / 6
        assert diff(r.phi, want) <= r.err_estimate.value
        # and the sharper fitted estimate is honest too
        assert diff(r.phi, want) <= 3 * r.err_fitted.value

    def test_interior_shift_agreement_pins_first_term(self):
        # at a = 0.75 a wrong first-term normalization would shift the sum
        # by (1 - a^(-s))(a - 1/2) ~ 0.19, far outside the fitted tail
        cfg = EvalConfig.from_digits(25)
        a = MpReal("0.75", cfg.precision_bits)
        ri = phi_integral(2, a, cfg)
        rs, ok = run_series(phi_series, 2, a, cfg)
        d = diff(rs.phi, ri.phi)
        assert d <= 3 * rs.err_fitted.value
        assert d <= rs.err_estimate.value + ri.err_estimate.value
        assert float(d) < 0.1

    def test_complex_point_agreement(self):
        cfg = EvalConfig.from_digits(20)
        s = ComplexPoint("0.5", 3, cfg.precision_bits)
        a = MpReal("0.75", cfg.precision_bits)
        ri = phi_integral(s, a, cfg)
        rs, ok = run_series(phi_series, s, a, cfg)
        assert diff(rs.phi, ri.phi) <= rs.err_estimate.value + ri.err_estimate.value

    def test_left_half_plane_caveat_flag(self):
        cfg = EvalConfig.from_digits(15, series_stage_cap=1024)
        r = phi_series(MpReal("-0.5", cfg.precision_bits), "0.8", cfg)
        assert "continuation_caveat" in r.flags
        # sanity: the value still tracks the continued integral loosely
        rc = __import__("hzeta").phi_continued(
            MpReal("-0.5", cfg.precision_bits), "0.8", None, cfg
        )
        assert diff(r.phi, rc.phi) <= 5 * r.err_fitted.value + mpf("0.05")

    def test_small_max_terms_runs_exactly_to_limit(self):
        cfg = EvalConfig.from_digits(15, max_terms=50)
        r, ok = run_series(phi_series, 2, 1, cfg)
        assert not ok
        assert r.terms_or_nodes == 50
        assert "accuracy_target_missed" in r.flags

    def test_unreachable_certificate_flag(self):
        cfg = EvalConfig.from_digits(25, max_terms=100_000)
        r, ok = run_series(phi_series, 2, "0.75", cfg)
        assert not ok
        assert "target_unreachable_at_max_terms" in r.flags

    def test_loose_target_converges_cleanly(self):
        # a certified stop: rigorous tail ~ 2.4/sqrt(N) at a = 1, s = 2
        cfg = EvalConfig.from_digits(15, target_tol=MpReal("0.05", 96), series_stage_cap=16384)
        r = phi_series(2, 1, cfg)
        assert not r.flags
        with mp.workprec(300):
            want = mpmath.pi**2 / 6
        assert diff(r.phi, want) <= r.err_estimate.value

    def test_domain(self, cfg30):
        with pytest.raises(DomainError):
            phi_series(2, 0, cfg30)
        with pytest.raises(DomainError):
            phi_series(2, 1, EvalConfig.from_digits(15, max_terms=1))


class TestShiftedSeries:
    def test_zero_shift_reduces_to_plain_zeta(self):
        cfg = EvalConfig.from_digits(20)
        r, ok = run_series(phi_shifted_series, 2, 0, cfg)
        with mp.workprec(300):
            want = mpmath.pi**2 / 6
        assert diff(r.phi, want) <= r.err_estimate.value
        assert diff(r.phi, want) <= 3 * r.err_fitted.value

    def test_unit_shift_consistency(self):
        # phi_series(s,1) - phi_shifted_series(s,1) = (s-1)
        cfg = EvalConfig.from_digits(20)
        r1, _ = run_series(phi_series, 3, 1, cfg)
        r2, _ = run_series(phi_shifted_series, 3, 1, cfg)
        with mp.workprec(cfg.work_bits):
            got = r1.phi.to_mpc() - r2.phi.to_mpc()
        assert diff(got, 2) <= r1.err_estimate.value + r2.err_estimate.value

    def test_matches_shifted_integral(self):
        cfg = EvalConfig.from_digits(20)
        s = MpReal("1.5", cfg.precision_bits)
        a = MpReal("0.5", cfg.precision_bits)
        ri = phi_shifted_integral(s, a, cfg)
        rs, _ = run_series(phi_shifted_series, s, a, cfg)
        d = diff(rs.phi, ri.phi)
        assert d <= rs.err_estimate.value + ri.err_estimate.value
        assert d <= 3 * rs.err_fitted.value

    def test_domain_allows_zero(self):
        cfg = EvalConfig.from_digits(15, series_stage_cap=512)
        run_series(phi_shifted_series, 2, 0, cfg)
        with pytest.raises(DomainError):
            phi_shifted_series(2, "1.01", cfg)


class TestAdaptivity:
    def test_term_budget_grows_as_shift_shrinks(self):
        # slower decay at small a must not stop earlier than at large a
        cfg = EvalConfig.from_digits(15, series_stage_cap=4096)
        counts = []
        for a in ("1.0", "0.5"):
            r, _ = run_series(phi_series, 2, a, cfg)
            counts.append(r.terms_or_nodes)
        assert counts[1] >= counts[0]

    def test_partial_sums_converge_toward_truth(self):
        # fitted error estimate shrinks as the cap is raised
        errs = []
        for cap in (256, 1024, 4096):
            cfg = EvalConfig.from_digits(15, series_stage_cap=cap)
            r, _ = run_series(phi_series, 2, 1, cfg)
            errs.append(float(r.err_fitted.value))
        assert errs[2] < errs[1] < errs[0]

    def test_reported_error_conservative_on_grid(self):
        cfg = EvalConfig.from_digits(15, series_stage_cap=1024)
        for s_txt in ("0.5", "1.5", "3"):
            for a_txt in ("0.5", "1.0"):
                s = MpReal(s_txt, cfg.precision_bits)
                a = MpReal(a_txt, cfg.precision_bits)
                ri = phi_integral(s, a, cfg)
                rs, _ = run_series(phi_series, s, a, cfg)
                assert diff(rs.phi, ri.phi) <= (
                    rs.err_estimate.value + ri.err_estimate.value
                ), (s_txt, a_txt)

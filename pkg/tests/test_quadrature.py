"""Half-line double-exponential quadrature engine."""

import mpmath
import pytest
from mpmath import mp, mpf

from hzeta import AccuracyError, EvalConfig, MpReal, quad_halfline
from hzeta.quadrature import integrate_halfline_raw
from conftest import diff, tol


class TestBasicIntegrals:
    def test_exponential(self, cfg30):
        v, err = quad_halfline(lambda t: mpmath.exp(-t), cfg30, decay_rate=1.0)
        assert diff(v, 1) < tol(-28)
        assert err.value < tol(-25)

    def test_gamma_two(self, cfg30):
        v, _ = quad_halfline(
            lambda t: t * mpmath.exp(-t), cfg30, decay_rate=1.0, origin_power=1.0
        )
        assert diff(v, 1) < tol(-28)

    def test_gamma_half_endpoint_singularity(self, cfg40):
        v, _ = quad_halfline(
            lambda t: mpmath.power(t, mpf(1) / 2 - 1) * mpmath.exp(-t),
            cfg40,
            decay_rate=1.0,
            origin_power=-0.5,
        )
        with mp.workprec(300):
            want = mpmath.sqrt(mpmath.pi)
        assert diff(v, want) < tol(-38)

    def test_slow_decay_needs_scaled_cutoff(self, cfg30):
        # integral of e^{-t/10} = 10
        v, _ = quad_halfline(
            lambda t: mpmath.exp(-t / 10), cfg30, decay_rate=0.1
        )
        assert diff(v, 10) < tol(-26)

    def test_oscillatory_complex_weight(self, cfg30):
        # integral of t^{i-1} ... use t^{s-1} e^{-t} = Gamma(s) at s = 1+2i
        s = mpmath.mpc(1, 2)
        v, _ = quad_halfline(
            lambda t: mpmath.power(t, s - 1) * mpmath.exp(-t),
            cfg30,
            decay_rate=1.0,
            origin_power=0.0,
        )
        with mp.workprec(300):
            want = mpmath.gamma(mpmath.mpc(1, 2))
        assert diff(v, want) < tol(-26)


class TestErrorBehavior:
    def test_error_estimate_brackets_true_error(self, cfg30):
        v, err = quad_halfline(lambda t: mpmath.exp(-t), cfg30, decay_rate=1.0)
        assert diff(v, 1) <= max(err.value, tol(-29))

    def test_level_differences_shrink_to_floor(self):
        # after the pre-asymptotic first levels, |I_L - I_{L-1}| is
        # nonincreasing until it bottoms out at the precision floor
        bits = 160
        out = integrate_halfline_raw(
            lambda t: mpmath.exp(-t),
            bits,
            10,
            mpf(10) ** -200,  # unreachable: force all levels
            1.0,
            0.0,
        )
        for seg in out.level_errs:
            drop = [float(e) for e in seg]
            start = next(
                (i for i in range(1, len(drop)) if drop[i] < drop[i - 1]), 1
            )
            floor = 2.0 ** (-(bits - 10))
            for i in range(start, len(drop) - 1):
                assert drop[i + 1] <= drop[i] or drop[i + 1] < floor

    def test_nonconvergence_raises_with_best_estimate(self):
        cfg = EvalConfig.from_digits(40, quad_levels=3)
        with pytest.raises(AccuracyError) as exc:
            quad_halfline(
                lambda t: mpmath.power(t, mpf("-0.9")) * mpmath.exp(-t),
                cfg,
                decay_rate=1.0,
                origin_power=-0.9,
            )
        value, err = exc.value.result
        assert err.value > 0
        # the carried estimate is still in the right ballpark
        with mp.workprec(300):
            want = mpmath.gamma(mpf("0.1"))
        assert diff(value, want) < 1


class TestNodeCaching:
    def test_rules_are_shared_and_deterministic(self, cfg30):
        v1, _ = quad_halfline(lambda t: mpmath.exp(-t), cfg30, decay_rate=1.0)
        v2, _ = quad_halfline(lambda t: mpmath.exp(-t), cfg30, decay_rate=1.0)
        assert diff(v1, v2) == 0

"""Integral representations of phi(s, a) = (s-1) * zeta(s, a).

Three routes share one quadrature engine:

* ``phi_integral``        - the weighted-kernel integral, Re(s) > 0;
* ``phi_continued``       - the k-times integrated-by-parts form, valid
                            for Re(s) > -k, which continues phi left of 0;
* ``phi_shifted_integral``- the same machinery at shift a+1, computing
                            (s-1)(zeta(s,a) - a^(-s)); permits a = 0.

phi is entire, so results carry the phi value, the zeta value recovered
as phi/(s-1) (flagged as a pole at s = 1), an error estimate from the
quadrature level differences, and method provenance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import mpmath
from mpmath import mp, mpc, mpf

from . import kernels
from .precision import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    ShiftParameter,
)
from .quadrature import integrate_halfline_raw

OSCILLATION_COMFORT = 50  # |Im s| beyond this needs raised quad levels


@dataclass(frozen=True)
class EvalResult:
    """A value of phi(s,a) = (s-1) zeta(s,a) with provenance.

    ``zeta`` is phi/(s-1), or None when s = 1 (``pole`` is then set).
    ``err_fitted`` carries the sharper empirical estimate on series
    routes; ``flags`` records caveats such as a missed accuracy target.
    """

    phi: ComplexPoint
    zeta: ComplexPoint | None
    pole: bool
    err_estimate: MpReal
    method: str
    terms_or_nodes: int
    flags: tuple[str, ...] = ()
    err_fitted: MpReal | None = None


def _finish(
    phi_raw: mpc,
    err_raw: mpf,
    s: ComplexPoint,
    cfg: EvalConfig,
    method: str,
    count: int,
    flags: tuple[str, ...] = (),
    err_fitted: mpf | None = None,
) -> EvalResult:
    bits = cfg.precision_bits
    pole = s.im.value == 0 and s.re.value == 1
    with mp.workprec(cfg.work_bits):
        if pole:
            zeta = None
        else:
            sm1 = s.to_mpc() - 1
            zeta = ComplexPoint._raw(phi_raw / sm1, bits)
            err_raw = err_raw * max(mpf(1), 1 / abs(sm1))
    return EvalResult(
        phi=ComplexPoint._raw(phi_raw, bits),
        zeta=zeta,
        pole=pole,
        err_estimate=MpReal._raw(err_raw, bits),
        method=method,
        terms_or_nodes=count,
        flags=flags,
        err_fitted=None if err_fitted is None else MpReal._raw(err_fitted, bits),
    )


def _check_oscillation(s: ComplexPoint, cfg: EvalConfig) -> tuple[str, ...]:
    if abs(float(s.im.value)) > OSCILLATION_COMFORT:
        return ("large_imaginary_part",)
    return ()


def _quad_phi_raw(
    s: ComplexPoint,
    a_val: mpf,
    k: int,
    cfg: EvalConfig,
    log_power: int = 0,
):
    """Integral of d^k[psi e^{-(a-1)t}] * (log t)^log_power * t^(s+k-1) dt.

    Returns the raw outcome of the half-line engine; the caller applies
    gamma prefactors.  Raises AccuracyError on non-convergence.
    """
    bits = cfg.work_bits
    sv = s.to_mpc()
    sigma = float(s.re.value)

    with mp.workprec(bits):
        tol = cfg.tol().value
        exponent = sv + k - 1

        if k == 0:
            def kernel(t: mpf):
                return kernels._kernel_raw(t, a_val, bits, -1) * mpmath.exp(
                    -(a_val - 1) * t
                )
        else:
            def kernel(t: mpf):
                return kernels._weighted_kernel_jet_raw(t, a_val, k, bits)[
                    k
                ] * math.factorial(k)

        if log_power == 0:
            def f(t: mpf):
                return kernel(t) * mpmath.power(t, exponent)
        else:
            def f(t: mpf):
                return kernel(t) * mpmath.log(t) ** log_power * mpmath.power(t, exponent)

    out = integrate_halfline_raw(
        f,
        bits,
        cfg.quad_levels,
        tol,
        decay_rate=float(a_val),
        origin_power=sigma + k - 1,
        poly_degree=log_power + k + 3,
    )
    if not out.converged:
        raise AccuracyError(
            f"quadrature did not converge within {cfg.quad_levels} levels",
            result=(ComplexPoint._raw(out.value, cfg.precision_bits),
                    MpReal._raw(out.err, cfg.precision_bits)),
        )
    return out


def phi_integral(s, a, cfg: EvalConfig | None = None) -> EvalResult:
    """phi(s,a) = (1/Gamma(s)) * integral of psi(t,a) e^{-(a-1)t} t^(s-1) dt.

    Requires Re(s) > 0 and 0 < a <= 1; use ``phi_continued`` to the left.
    """
    cfg = cfg or EvalConfig()
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if not s.re.value > 0:
        raise DomainError("phi_integral needs Re(s) > 0; route to phi_continued")
    flags = _check_oscillation(s, cfg)
    out = _quad_phi_raw(s, a.a.value, 0, cfg)
    with mp.workprec(cfg.work_bits):
        g = mpmath.gamma(s.to_mpc())
        phi = out.value / g
        err = out.err / abs(g) + abs(phi) * mpf(2) ** (-cfg.work_bits + 8)
    return _finish(phi, err, s, cfg, "integral", out.nodes, flags)


def continuation_order(s, precision_bits: int = 64) -> int:
    """Default k for the continued representation: keeps Re(s) + k >= 1."""
    s = ComplexPoint.coerce(s, precision_bits)
    return max(0, int(math.ceil(1 - float(s.re.value))) + 1)


def phi_continued(s, a, k: int | None = None, cfg: EvalConfig | None = None) -> EvalResult:
    """phi(s,a) from the k-th kernel derivative; valid for Re(s) > -k.

    phi = ((-1)^k / Gamma(s+k)) * integral of g^(k)(t) t^(s+k-1) dt with
    g = psi e^{-(a-1)t}.  Gamma(s+k) stays off its poles since
    Re(s+k) > 0 on the admissible domain.
    """
    cfg = cfg or EvalConfig()
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if k is None:
        k = continuation_order(s, cfg.precision_bits)
    if k < 0:
        raise DomainError("continuation order k must be >= 0")
    if k > kernels.DERIVATIVE_CAP:
        raise DomainError(f"continuation order capped at {kernels.DERIVATIVE_CAP}")
    if not s.re.value > -k:
        raise DomainError(f"phi_continued needs Re(s) > -k = {-k}")
    flags = _check_oscillation(s, cfg)
    out = _quad_phi_raw(s, a.a.value, k, cfg)
    with mp.workprec(cfg.work_bits):
        g = mpmath.gamma(s.to_mpc() + k)
        phi = (-1) ** k * out.value / g
        err = out.err / abs(g) + abs(phi) * mpf(2) ** (-cfg.work_bits + 8)
    return _finish(phi, err, s, cfg, f"continued(k={k})", out.nodes, flags)


def phi_shifted_integral(s, a, cfg: EvalConfig | None = None) -> EvalResult:
    """(s-1)(zeta(s,a) - a^(-s)) via the shifted kernel eta(t,a) e^{-at}.

    eta at shift a equals psi at shift a+1, so this is the main integral
    evaluated one shift up; a = 0 is admissible and yields (s-1) zeta(s).
    """
    cfg = cfg or EvalConfig()
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_extended()
    if not s.re.value > 0:
        raise DomainError("phi_shifted_integral needs Re(s) > 0")
    flags = _check_oscillation(s, cfg)
    with mp.workprec(cfg.work_bits):
        a_up = a.a.value + 1
    out = _quad_phi_raw(s, a_up, 0, cfg)
    with mp.workprec(cfg.work_bits):
        g = mpmath.gamma(s.to_mpc())
        phi = out.value / g
        err = out.err / abs(g) + abs(phi) * mpf(2) ** (-cfg.work_bits + 8)
    return _finish(phi, err, s, cfg, "shifted-integral", out.nodes, flags)

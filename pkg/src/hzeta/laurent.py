"""Taylor coefficients of phi(s,a) = (s-1) zeta(s,a) about any point.

Differentiating the integral representation under the integral sign turns
d/ds into a log t weight, so with A(s) = phi(s, a) Gamma(s):

    a_n = (1/n!) integral psi(t,a) e^{-(a-1)t} (log t)^n t^(s0-1) dt
    c_n = (1/n!) integral e^{-t} (log t)^n t^(s0-1) dt  =  Gamma^(n)(s0)/n!

and the target coefficients gamma_n of phi itself follow by power-series
division A(s)/Gamma(s):

    gamma_n = (a_n - sum_{k=1}^n c_k gamma_{n-k}) / c_0.

(The division identity requires a_n to be divided by c_0 as well; a
rendition that adds a_n outside the division fails the Cauchy-product
check and is not used.)

About s0 = 1 the gamma_n encode the classical Stieltjes constants:
gamma_1(a, 1) = -digamma(a).  Points with Re(s0) <= 0 are reached by
building the jet of A from the k-fold integrated-by-parts representation
and dividing by the jet of the rising factorial (s0)_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from . import kernels
from .integral_eval import continuation_order
from .precision import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    ShiftParameter,
)
from .quadrature import integrate_halfline_raw

ORDER_CAP = 32


@dataclass(frozen=True)
class LaurentExpansion:
    """Expansion of phi about s0: phi(s) = sum gamma_n (s - s0)^n.

    ``a_coeffs`` are the Taylor coefficients of phi(s) Gamma(s),
    ``c_coeffs`` those of Gamma(s), and ``gamma_coeffs`` their quotient.
    ``err_estimates[n]`` bounds gamma_n first-order through the division.
    """

    s0: ComplexPoint
    a: ShiftParameter
    order: int
    a_coeffs: tuple[ComplexPoint, ...]
    c_coeffs: tuple[ComplexPoint, ...]
    gamma_coeffs: tuple[ComplexPoint, ...]
    err_estimates: tuple[MpReal, ...]


def _log_weight_quad(
    kernel, n: int, s0: mpc, cfg: EvalConfig, decay_rate: float, origin_power: float
) -> tuple[mpc, mpf]:
    """(1/n!) * integral kernel(t) (log t)^n t^(s0-1) dt, raw values."""
    bits = cfg.work_bits
    with mp.workprec(bits):
        tol = cfg.tol().value
        exponent = s0 - 1

        if n == 0:
            def f(t: mpf):
                return kernel(t) * mpmath.power(t, exponent)
        else:
            def f(t: mpf):
                return kernel(t) * mpmath.log(t) ** n * mpmath.power(t, exponent)

    out = integrate_halfline_raw(
        f,
        bits,
        cfg.quad_levels,
        tol,
        decay_rate=decay_rate,
        origin_power=origin_power,
        poly_degree=n + 3,
    )
    if not out.converged:
        raise AccuracyError(
            f"coefficient quadrature (log power {n}) did not converge",
            result=None,
        )
    fact = math.factorial(n)
    with mp.workprec(bits):
        return out.value / fact, out.err / fact


def a_coeff(n: int, s0, a, cfg: EvalConfig | None = None) -> ComplexPoint:
    """n-th Taylor coefficient of phi(s,a) Gamma(s) about s0, Re(s0) > 0."""
    value, _err = _a_coeff_raw(n, s0, a, cfg or EvalConfig())
    return value


def _a_coeff_raw(n: int, s0, a, cfg: EvalConfig) -> tuple[ComplexPoint, MpReal]:
    if n < 0:
        raise DomainError("coefficient index must be >= 0")
    s0 = ComplexPoint.coerce(s0, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if not s0.re.value > 0:
        raise DomainError("a_coeff integral needs Re(s0) > 0")
    bits = cfg.work_bits
    av = a.a.value

    with mp.workprec(bits):
        def kernel(t: mpf):
            return kernels._kernel_raw(t, av, bits, -1) * mpmath.exp(-(av - 1) * t)

    raw, err = _log_weight_quad(
        kernel, n, s0.to_mpc(), cfg, float(av), float(s0.re.value) - 1
    )
    return (
        ComplexPoint._raw(raw, cfg.precision_bits),
        MpReal._raw(err, cfg.precision_bits),
    )


def c_coeff(n: int, s0, cfg: EvalConfig | None = None) -> ComplexPoint:
    """Gamma^(n)(s0)/n! via the log-weighted Euler integral, Re(s0) > 0."""
    value, _err = _c_coeff_raw(n, s0, cfg or EvalConfig())
    return value


def _c_coeff_raw(n: int, s0, cfg: EvalConfig) -> tuple[ComplexPoint, MpReal]:
    if n < 0:
        raise DomainError("coefficient index must be >= 0")
    s0 = ComplexPoint.coerce(s0, cfg.precision_bits)
    if not s0.re.value > 0:
        raise DomainError("c_coeff integral needs Re(s0) > 0")
    raw, err = _log_weight_quad(
        lambda t: mpmath.exp(-t), n, s0.to_mpc(), cfg, 1.0, float(s0.re.value) - 1
    )
    return (
        ComplexPoint._raw(raw, cfg.precision_bits),
        MpReal._raw(err, cfg.precision_bits),
    )


def _gamma_jet_raw(s0: mpc, order: int, bits: int) -> list[mpc]:
    """Taylor coefficients of Gamma about s0 off the poles, via exp(log-Gamma jet).

    Gamma(s0+h) = Gamma(s0) exp(sum_{j>=1} psi^(j-1)(s0) h^j / j!).
    """
    with mp.workprec(bits):
        log_jet = [mpc(0)]
        for j in range(1, order + 1):
            log_jet.append(mpmath.psi(j - 1, s0) / math.factorial(j))
        expj = _jet_exp(log_jet, order + 1)
        g0 = mpmath.gamma(s0)
        return [g0 * c for c in expj]


def _jet_exp(p: list[mpc], n: int) -> list[mpc]:
    # exp of a series with zero constant term: q' = p' q
    q = [mpc(1)] + [mpc(0)] * (n - 1)
    for m in range(1, n):
        acc = mpc(0)
        for j in range(1, m + 1):
            if j < len(p):
                acc += j * p[j] * q[m - j]
        q[m] = acc / m
    return q


def _series_divide(a_c: list[mpc], c_c: list[mpc]) -> list[mpc]:
    """Coefficients of (sum a_n x^n) / (sum c_n x^n); c_0 must be nonzero."""
    out = []
    for n in range(len(a_c)):
        acc = a_c[n]
        for k in range(1, n + 1):
            acc -= c_c[k] * out[n - k]
        out.append(acc / c_c[0])
    return out


def _pochhammer_jet(s0: mpc, k: int, order: int) -> list[mpc]:
    """Polynomial jet of (s0+h)(s0+1+h)...(s0+k-1+h), exact in the arithmetic."""
    jet = [mpc(1)] + [mpc(0)] * order
    for i in range(k):
        new = [mpc(0)] * (order + 1)
        for j in range(order + 1):
            new[j] += jet[j] * (s0 + i)
            if j + 1 <= order:
                new[j + 1] += jet[j]
        jet = new
    return jet


def laurent_expand(s0, a, order: int, cfg: EvalConfig | None = None) -> LaurentExpansion:
    """Coefficients gamma_n of phi(s,a) about s0 up to the given order.

    For Re(s0) > 0 the a_n and c_n come from the log-weighted integrals;
    otherwise the jet of phi*Gamma is assembled from the k-fold
    integrated-by-parts integrand and the rising-factorial jet, with k
    chosen by the continuation policy.
    """
    cfg = cfg or EvalConfig()
    if order < 0:
        raise DomainError("order must be >= 0")
    if order > ORDER_CAP:
        raise DomainError(f"order capped at {ORDER_CAP}")
    s0 = ComplexPoint.coerce(s0, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    bits = cfg.work_bits
    s0v = s0.to_mpc()

    if s0.re.value > 0:
        a_list, a_errs = [], []
        for n in range(order + 1):
            v, e = _a_coeff_raw(n, s0, a, cfg)
            a_list.append(v.to_mpc())
            a_errs.append(e.value)
        c_list, c_errs = [], []
        for n in range(order + 1):
            v, e = _c_coeff_raw(n, s0, cfg)
            c_list.append(v.to_mpc())
            c_errs.append(e.value)
    else:
        k = continuation_order(s0, cfg.precision_bits)
        a_list, a_errs = _a_jet_continued_raw(s0v, a.a.value, k, order, cfg)
        with mp.workprec(bits):
            c_list = _gamma_jet_raw(s0v, order, bits)
            c_errs = [abs(c) * mpf(2) ** (16 - bits) for c in c_list]

    with mp.workprec(bits):
        gamma_list = _series_divide(a_list, c_list)
        gamma_errs = _propagate_division_errors(
            a_errs, c_list, c_errs, gamma_list
        )

    out_bits = cfg.precision_bits
    return LaurentExpansion(
        s0=s0,
        a=a,
        order=order,
        a_coeffs=tuple(ComplexPoint._raw(v, out_bits) for v in a_list),
        c_coeffs=tuple(ComplexPoint._raw(v, out_bits) for v in c_list),
        gamma_coeffs=tuple(ComplexPoint._raw(v, out_bits) for v in gamma_list),
        err_estimates=tuple(MpReal._raw(e, out_bits) for e in gamma_errs),
    )


def _propagate_division_errors(a_errs, c_list, c_errs, gamma_list) -> list[mpf]:
    """|d gamma_n| <= (|d a_n| + sum_k |c_k||d gamma_{n-k}| + |gamma_{n-k}||d c_k|)/|c_0|."""
    errs: list[mpf] = []
    c0 = abs(c_list[0])
    for n in range(len(gamma_list)):
        acc = mpf(a_errs[n])
        for k in range(1, n + 1):
            acc += abs(c_list[k]) * errs[n - k] + abs(gamma_list[n - k]) * mpf(c_errs[k])
        errs.append(acc / c0)
    return errs


def _a_jet_continued_raw(
    s0: mpc, av: mpf, k: int, order: int, cfg: EvalConfig
) -> tuple[list[mpc], list[mpf]]:
    """Jet of A(s) = phi(s,a) Gamma(s) about a left-half-plane s0.

    A(s) = (-1)^k I_k(s) / (s)_k with
    I_k(s) = integral g^(k)(t) t^(s+k-1) dt, so the I_k jet comes from
    log-weighted quadratures and the division by the (s0)_k jet reuses
    the series-division core.
    """
    bits = cfg.work_bits
    sigma_k = float(mpf(s0.real) + k)
    if not sigma_k > 0:
        raise DomainError("continuation order too small for this s0")

    with mp.workprec(bits):
        def kernel(t: mpf):
            return kernels._weighted_kernel_jet_raw(t, av, k, bits)[k] * math.factorial(k)

    i_list, i_errs = [], []
    for n in range(order + 1):
        raw, err = _log_weight_quad(
            kernel, n, s0 + k, cfg, float(av), sigma_k - 1
        )
        i_list.append(raw)
        i_errs.append(err)
    with mp.workprec(bits):
        sign = (-1) ** k
        i_list = [sign * v for v in i_list]
        poch = _pochhammer_jet(s0, k, order)
        a_list = _series_divide(i_list, poch)
        # first-order error transport through the polynomial division
        a_errs = _propagate_division_errors(
            i_errs, poch, [mpf(0)] * (order + 1), a_list
        )
    return a_list, a_errs


def laurent_eval(expansion: LaurentExpansion, s) -> ComplexPoint:
    """Horner evaluation of sum gamma_n (s - s0)^n at s."""
    bits = expansion.s0.precision_bits
    s = ComplexPoint.coerce(s, bits)
    with mp.workprec(bits + 16):
        h = s.to_mpc() - expansion.s0.to_mpc()
        acc = mpc(0)
        for coeff in reversed(expansion.gamma_coeffs):
            acc = acc * h + coeff.to_mpc()
    return ComplexPoint._raw(acc, bits)


def to_pole_normalized(expansion: LaurentExpansion) -> tuple[ComplexPoint, tuple[ComplexPoint, ...]]:
    """Re-index an s0 = 1 expansion as phi(s) = gamma_0 + sum g_n (s-1)^(n+1).

    Returns (gamma_0, (g_0, g_1, ...)) with g_n = gamma_{n+1}; the inverse
    is ``from_pole_normalized``.  Classical Stieltjes constants relate by
    stieltjes_n = (-1)^n n! g_n.  Only meaningful about s0 = 1.
    """
    if not (expansion.s0.is_real and expansion.s0.re.value == 1):
        raise DomainError("pole-normalized form is defined about s0 = 1")
    return expansion.gamma_coeffs[0], tuple(expansion.gamma_coeffs[1:])


def from_pole_normalized(
    gamma0: ComplexPoint, shifted: tuple[ComplexPoint, ...]
) -> tuple[ComplexPoint, ...]:
    """Inverse of ``to_pole_normalized``: rebuild (gamma_0, gamma_1, ...)."""
    return (gamma0,) + tuple(shifted)

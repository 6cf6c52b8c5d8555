"""Independent classical references used to validate the evaluation paths.

These deliberately avoid the kernel machinery of the main routes:

* ``dirichlet_oracle``          - direct series summation with an
                                  Euler-Maclaurin tail (Re(s) > 1);
* ``classical_integral_oracle`` - the textbook integral of
                                  t^(s-1) e^{-(a-1)t}/(e^t - 1) (Re(s) > 1);
* ``negative_integer_oracle``   - Bernoulli-polynomial closed forms
                                  zeta(-m, a) = -B_{m+1}(a)/(m+1).

Clarity beats speed here; these exist to be obviously right.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mp, mpc, mpf

from .precision import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    ShiftParameter,
    bernoulli_number,
    bernoulli_poly,
)
from .quadrature import integrate_halfline_raw

DEFAULT_HEAD_TERMS = 50
DEFAULT_CORRECTION_ORDER = 8  # Bernoulli corrections B_2 .. B_16


def _euler_maclaurin_raw(
    s: mpc, a: mpf, head: int, order: int, bits: int
) -> tuple[mpc, mpf]:
    """zeta(s, a) = head sum + tail integral + half term + B_2j corrections.

    With x = head + a and f(n) = (n-1+a)^(-s):

        sum_{n>head} f(n) = x^(1-s)/(s-1) + x^(-s)/2
                            + sum_j B_2j/(2j)! (s)_{2j-1} x^(-s-2j+1) + R

    and |R| is estimated by the first omitted correction term.
    """
    with mp.workprec(bits):
        acc = mpc(0)
        for n in range(1, head + 1):
            acc += mpmath.power(n - 1 + a, -s)
        x = head + a
        acc += mpmath.power(x, 1 - s) / (s - 1)
        acc += mpmath.power(x, -s) / 2
        poch = s  # (s)_{2j-1}, starting at (s)_1
        xpow = mpmath.power(x, -s - 1)  # x^(-s-2j+1), starting at j = 1
        for j in range(1, order + 1):
            b = bernoulli_number(2 * j)
            acc += mpf(b.numerator) / b.denominator / math.factorial(2 * j) * poch * xpow
            poch *= (s + 2 * j - 1) * (s + 2 * j)
            xpow /= x * x
        b = bernoulli_number(2 * order + 2)
        est = abs(
            mpf(b.numerator) / b.denominator / math.factorial(2 * order + 2) * poch * xpow
        )
        return acc, est


def dirichlet_oracle(s, a, cfg: EvalConfig | None = None) -> ComplexPoint:
    """zeta(s, a) for Re(s) > 1 by direct summation with an E-M tail.

    Head length and correction order scale with the precision target so
    the reported tolerance is actually achieved.
    """
    cfg = cfg or EvalConfig()
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if not s.re.value > 1:
        raise DomainError("dirichlet_oracle needs Re(s) > 1")
    bits = cfg.work_bits
    head = max(DEFAULT_HEAD_TERMS, int(1.5 * cfg.digits), int(2 * abs(float(s.im.value))))
    order = max(DEFAULT_CORRECTION_ORDER, min(60, int(cfg.digits // 2)))
    with mp.workprec(bits):
        value, est = _euler_maclaurin_raw(s.to_mpc(), a.a.value, head, order, bits)
        tol = cfg.tol().value
        while est > tol * max(1, abs(value)) and head < 100_000:
            head *= 2
            order = min(order + 10, 80)
            value, est = _euler_maclaurin_raw(s.to_mpc(), a.a.value, head, order, bits)
        if est > tol * max(1, abs(value)):
            raise AccuracyError(
                "Euler-Maclaurin tail failed to meet the tolerance",
                result=ComplexPoint._raw(value, cfg.precision_bits),
            )
    return ComplexPoint._raw(value, cfg.precision_bits)


def classical_integral_oracle(s, a, cfg: EvalConfig | None = None) -> ComplexPoint:
    """zeta(s, a) for Re(s) > 1 via the classical half-line integral.

    The kernel is evaluated as e^{-at}/(1 - e^{-t}), which is
    cancellation-free near 0 where it behaves like t^(s-2).
    """
    cfg = cfg or EvalConfig()
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if not s.re.value > 1:
        raise DomainError("classical_integral_oracle needs Re(s) > 1")
    bits = cfg.work_bits
    sv = s.to_mpc()
    av = a.a.value
    with mp.workprec(bits):
        tol = cfg.tol().value

        def f(t: mpf):
            return (
                mpmath.exp(-av * t)
                / (-mpmath.expm1(-t))
                * mpmath.power(t, sv - 1)
            )

    out = integrate_halfline_raw(
        f,
        bits,
        cfg.quad_levels,
        tol,
        decay_rate=float(av),
        origin_power=float(s.re.value) - 2,
        poly_degree=2,
    )
    if not out.converged:
        raise AccuracyError(
            "classical integral quadrature did not converge",
            result=ComplexPoint._raw(out.value, cfg.precision_bits),
        )
    with mp.workprec(bits):
        value = out.value / mpmath.gamma(sv)
    return ComplexPoint._raw(value, cfg.precision_bits)


def negative_integer_oracle(m: int, a, precision_bits: int | None = None) -> MpReal:
    """zeta(-m, a) = -B_{m+1}(a)/(m+1), exact Bernoulli closed form."""
    if m < 0:
        raise DomainError("m must be >= 0")
    a_sp = ShiftParameter.coerce(a, precision_bits or 128)
    bits = precision_bits or a_sp.a.precision_bits
    value = bernoulli_poly(m + 1, a_sp.a.at_precision(bits))
    return (-value) / (m + 1)

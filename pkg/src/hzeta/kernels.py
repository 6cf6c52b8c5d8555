"""Integrand kernels for the zeta integral representations.

Everything here is built out of w(t) = t/(e^t - 1) and its derivative:

    psi(t, a) = (a-1) * w(t) - w'(t)            (main kernel)
    eta(t, a) = a * w(t) - w'(t) = psi(t, a+1)  (shifted-function kernel)

The weighted kernel g(t) = psi(t, a) * exp(-(a-1)t) is the exact
derivative of F(t) = -w(t) * exp(-(a-1)t), whose Taylor series at 0 is
-sum B_m(1-a) t^m / m!.  That single fact powers the k-th derivative
construction for the analytic continuation: the continued integrand is
just F^(k+1).

Near t = 0 the closed forms of w and w' cancel catastrophically, so below
a switch-point the Bernoulli series is used instead; jets (truncated
Taylor arithmetic) handle derivatives above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import mpmath
from mpmath import mp, mpf

from .precision import (
    ComplexPoint,
    DomainError,
    MpReal,
    ShiftParameter,
    bernoulli_number,
    bernoulli_poly_coeffs,
    _infer_bits,
)

SERIES_SWITCH = 0.25  # below this, kernels evaluate by Bernoulli series
SERIES_CAP = 256  # hard cap on Bernoulli series length
DERIVATIVE_CAP = 32

IdentityName = Literal["n_weight", "n_plus_one_weight"]


@lru_cache(maxsize=64)
def _bernoulli_mpf(count: int, bits: int) -> tuple[mpf, ...]:
    """B_0 .. B_{count-1} rounded once to the working precision."""
    out = []
    with mp.workprec(bits):
        for m in range(count):
            b = bernoulli_number(m)
            out.append(mpf(b.numerator) / b.denominator)
    return tuple(out)


def _series_length(bits: int) -> int:
    # terms shrink by ~ (t/2pi)^m; at t <= 1/4 that is 4.65 bits per term
    return min(SERIES_CAP, int((bits + 16) / 4.65) + 8)


def _w_raw(t: mpf) -> mpf:
    """w(t) = t/(e^t - 1), cancellation-free via expm1; w(0) = 1."""
    if t == 0:
        return mpf(1)
    return t / mpmath.expm1(t)


def _w_prime_raw(t: mpf, bits: int) -> mpf:
    """w'(t); series below the switch-point, closed form above."""
    if t < SERIES_SWITCH:
        B = _bernoulli_mpf(_series_length(bits), bits)
        # w'(t) = sum_{m>=1} B_m t^{m-1}/(m-1)!
        acc = mpf(0)
        term = mpf(1)  # t^{m-1}/(m-1)! at m = 1
        for m in range(1, len(B)):
            acc += B[m] * term
            term = term * t / m
        return acc
    u = 1 / mpmath.expm1(t)  # 1/(e^t - 1)
    return u - t * mpmath.exp(t) * u * u


def _kernel_series_coeffs(shift: mpf, bits: int) -> list[mpf]:
    """Coefficients of sum_m (shift*B_m - B_{m+1}) t^m / m!."""
    B = _bernoulli_mpf(_series_length(bits) + 1, bits)
    coeffs = []
    with mp.workprec(bits):
        fact = mpf(1)
        for m in range(len(B) - 1):
            coeffs.append((shift * B[m] - B[m + 1]) / fact)
            fact *= m + 1
    return coeffs


def _kernel_raw(t: mpf, a: mpf, bits: int, shift_delta: int) -> mpf:
    """psi for shift_delta = -1 (coefficient a-1), eta for 0 (coefficient a)."""
    shift = a + shift_delta
    if t < SERIES_SWITCH:
        acc = mpf(0)
        tp = mpf(1)
        for c in _kernel_series_coeffs(shift, bits):
            acc += c * tp
            tp *= t
        return acc
    return shift * _w_raw(t) - _w_prime_raw(t, bits)


def psi(t, a, precision_bits: int | None = None) -> MpReal:
    """Main integrand kernel; continuous at 0 with psi(0, a) = a - 1/2."""
    if precision_bits is None:
        precision_bits = _infer_bits(t, a)
    t = MpReal.coerce(t, precision_bits)
    if t.value < 0:
        raise DomainError("kernel argument t must be >= 0")
    a = ShiftParameter.coerce(a, precision_bits).a
    bits = max(t.precision_bits, a.precision_bits)
    with mp.workprec(bits + 8):
        v = _kernel_raw(t.value, a.value, bits + 8, -1)
    with mp.workprec(bits):
        return MpReal._raw(v, bits)


def eta(t, a, precision_bits: int | None = None) -> MpReal:
    """Shifted-function kernel; eta(t, a) = psi(t, a+1) = psi(t, a) + w(t).

    Continuous at 0 with eta(0, a) = a + 1/2, defined for 0 <= a <= 1.
    """
    if precision_bits is None:
        precision_bits = _infer_bits(t, a)
    t = MpReal.coerce(t, precision_bits)
    if t.value < 0:
        raise DomainError("kernel argument t must be >= 0")
    a = ShiftParameter.coerce(a, precision_bits)
    a.require_extended()
    bits = max(t.precision_bits, a.a.precision_bits)
    with mp.workprec(bits + 8):
        v = _kernel_raw(t.value, a.a.value, bits + 8, 0)
    with mp.workprec(bits):
        return MpReal._raw(v, bits)


# ----------------------------------------------------------------------
# Jets: truncated Taylor arithmetic for the antiderivative F
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class KernelJet:
    """Taylor coefficients of the weighted kernel g at a point t.

    coeffs[j] = g^(j)(t) / j!  for g(t) = psi(t,a) exp(-(a-1)t), so
    coeffs[0] is the kernel value itself.
    """

    t: MpReal
    order: int
    coeffs: tuple[ComplexPoint, ...]


def _jet_mul(p: list[mpf], q: list[mpf], n: int) -> list[mpf]:
    out = [mpf(0)] * n
    for i, pi in enumerate(p):
        if i >= n:
            break
        for j, qj in enumerate(q):
            if i + j >= n:
                break
            out[i + j] += pi * qj
    return out


def _jet_recip(p: list[mpf], n: int) -> list[mpf]:
    # reciprocal of a series with nonzero constant term
    out = [mpf(0)] * n
    out[0] = 1 / p[0]
    for m in range(1, n):
        acc = mpf(0)
        for j in range(1, m + 1):
            if j < len(p):
                acc += p[j] * out[m - j]
        out[m] = -acc / p[0]
    return out


def _jet_exp_linear(c: mpf, n: int) -> list[mpf]:
    # series of exp(c*h)
    out = [mpf(1)]
    for m in range(1, n):
        out.append(out[-1] * c / m)
    return out


def _antiderivative_jet(t: mpf, a: mpf, n: int) -> list[mpf]:
    """Taylor coefficients of F(t+h) = -(t+h) e^{-a(t+h)} / (1 - e^{-(t+h)}).

    Valid for t bounded away from 0 (the reciprocal seed is 1 - e^{-t}).
    """
    emt = mpmath.exp(-t)
    eh = _jet_exp_linear(mpf(-1), n)  # e^{-h}
    den = [1 - emt * eh[0]] + [-emt * c for c in eh[1:n]]
    inv = _jet_recip(den, n)
    scale = mpmath.exp(-a * t)
    expa = [scale * c for c in _jet_exp_linear(-a, n)]
    lin = [t, mpf(1)] + [mpf(0)] * max(0, n - 2)
    out = _jet_mul(_jet_mul(lin[:n], expa, n), inv, n)
    return [-c for c in out]


@lru_cache(maxsize=128)
def _bernoulli_poly_values_cached(length: int, x_key, bits: int) -> tuple[mpf, ...]:
    x = mpf(x_key)
    out = []
    with mp.workprec(bits + 32):
        for m in range(length):
            acc = mpf(0)
            for c in bernoulli_poly_coeffs(m):
                acc = acc * x + mpf(c.numerator) / c.denominator
            out.append(acc)
    return tuple(out)


def _antiderivative_series(t: mpf, a: mpf, bits: int, n_coeffs: int) -> list[mpf]:
    """Taylor coefficients of F about small t from F = -sum B_m(1-a) t^m/m!.

    Re-centers the truncated Bernoulli-polynomial series at t, giving the
    coefficients of F(t+h) in h up to order n_coeffs-1.
    """
    length = _series_length(bits) + n_coeffs + 2
    vals = _bernoulli_poly_values_cached(length, (1 - a)._mpf_, bits)
    out = []
    with mp.workprec(bits):
        inv_fact = [mpf(1)]
        for m in range(1, length):
            inv_fact.append(inv_fact[-1] / m)
        for j in range(n_coeffs):
            acc = mpf(0)
            tp = mpf(1)
            for m in range(j, length):
                # B_m(1-a)/m! * C(m,j) * t^(m-j) = B_m(1-a)/(j!(m-j)!) t^(m-j)
                acc += vals[m] * inv_fact[m - j] * tp
                tp *= t
            out.append(-acc * inv_fact[j])
    return out


def _weighted_kernel_jet_raw(t: mpf, a: mpf, order: int, bits: int) -> list[mpf]:
    """Coefficients g^(j)(t)/j! for j = 0..order, raw mpf."""
    n = order + 2  # F-jet needs one extra order since g = F'
    with mp.workprec(bits):
        if t < SERIES_SWITCH:
            fjet = _antiderivative_series(t, a, bits, n)
        else:
            fjet = _antiderivative_jet(t, a, n)
        return [(j + 1) * fjet[j + 1] for j in range(order + 1)]


def kernel_jet(t, a, order: int, precision_bits: int | None = None) -> KernelJet:
    """Jet of the weighted kernel g = psi * exp(-(a-1)t) at t, to `order`."""
    if order < 0:
        raise DomainError("jet order must be >= 0")
    if order > DERIVATIVE_CAP:
        raise DomainError(f"jet order capped at {DERIVATIVE_CAP}")
    if precision_bits is None:
        precision_bits = _infer_bits(t, a)
    t = MpReal.coerce(t, precision_bits)
    if t.value < 0:
        raise DomainError("kernel argument t must be >= 0")
    a = ShiftParameter.coerce(a, precision_bits).a
    bits = max(t.precision_bits, a.precision_bits)
    raw = _weighted_kernel_jet_raw(t.value, a.value, order, bits + 16)
    with mp.workprec(bits):
        coeffs = tuple(ComplexPoint._raw(c, bits) for c in raw)
    return KernelJet(t=t, order=order, coeffs=coeffs)


def integrand_derivative(k: int, t, a, precision_bits: int | None = None) -> MpReal:
    """k-th derivative of the weighted kernel psi(t,a) e^{-(a-1)t}."""
    if k < 0:
        raise DomainError("derivative order must be >= 0")
    jet = kernel_jet(t, a, k, precision_bits)
    bits = jet.coeffs[k].precision_bits
    with mp.workprec(bits):
        return MpReal._raw(jet.coeffs[k].re.value * math.factorial(k), bits)


# ----------------------------------------------------------------------
# The two weight-generating identities
# ----------------------------------------------------------------------


def identity_check_bits(t: float, N: int, base_bits: int) -> int:
    """Precision needed to resolve the identity's x^N/N tail numerically.

    At small t the bound shrinks like (1 - e^-t)^N, far below the ulp of
    the O(1) left side, so asserting |lhs - partial| <= tail demands
    precision proportional to -log2(tail).
    """
    x = -math.expm1(-t)
    log2_tail = N * math.log2(x) - math.log2(N)
    return max(base_bits, int(-log2_tail) + 64)


def identity_lhs_rhs(
    which: IdentityName, t, N: int, precision_bits: int | None = None
) -> tuple[MpReal, MpReal, MpReal]:
    """Closed form vs N-term partial sum of a weight-generating series.

    ``n_weight``:           t e^{-t}/(1-e^{-t})        = sum x^{n-1} e^{-t}/n
    ``n_plus_one_weight``:  t e^{-t}/(1-e^{-t})^2 - e^{-t}/(1-e^{-t})
                                                       = sum x^{n-1} e^{-t}/(n+1)
    with x = 1 - e^{-t}.  Returns (lhs, partial_rhs, tail_bound); the
    tail bound is the geometric majorant x^N / N.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if which not in ("n_weight", "n_plus_one_weight"):
        raise DomainError(f"unknown identity {which!r}")
    if precision_bits is None:
        precision_bits = _infer_bits(t)
    t = MpReal.coerce(t, precision_bits)
    if not t.value > 0:
        raise DomainError("identities require t > 0")
    bits = t.precision_bits
    with mp.workprec(bits + 16):
        tv = t.value
        emt = mpmath.exp(-tv)
        x = -mpmath.expm1(-tv)  # 1 - e^{-t}
        if which == "n_weight":
            lhs = tv * emt / x
        else:
            lhs = tv * emt / (x * x) - emt / x
        partial = mpf(0)
        xp = mpf(1)
        for n in range(1, N + 1):
            den = n if which == "n_weight" else n + 1
            partial += xp / den
            xp *= x
        partial *= emt
        tail = xp / N  # xp = x^N after the loop
    with mp.workprec(bits):
        return (
            MpReal._raw(lhs, bits),
            MpReal._raw(partial, bits),
            MpReal._raw(tail, bits),
        )

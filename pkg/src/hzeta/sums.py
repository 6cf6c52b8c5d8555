"""Alternating binomial sums S_n(s, a) and their supporting estimates.

S_n(s, a) = sum_{k=0}^{n-1} (-1)^k C(n-1, k) (k+a)^(-s) for n >= 2, with
the convention S_1 = 1.  The alternation runs through binomial weights of
size ~2^n, so n extra bits of working precision are spent per index and
the actual cancellation is measured and reported.

Whole prefixes S_1..S_N are produced by a forward-difference table over
the values (k+a)^(-s), executed in fixed-point integer arithmetic: the
table is mathematically identical to the defining sums, costs O(N^2)
big-integer subtractions for all N sums together, and the integer layer
is several times faster than mpf arithmetic at these sizes.

At non-positive integer s with the (always rational) binary shift a the
sums are evaluated in exact rational arithmetic, which is what makes the
"eventually zero" property testable as identity rather than tolerance.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath
from mpmath import mp, mpc, mpf

from .precision import (
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    ShiftParameter,
    _infer_bits,
)

_LN2 = math.log(2)


class SnValue(NamedTuple):
    value: ComplexPoint
    cancellation_bits: int


class SnEntry(NamedTuple):
    n: int
    value: ComplexPoint
    cancellation_bits: int


@dataclass(frozen=True)
class SnTable:
    """Cached prefix S_1..S_N for one (s, a, precision)."""

    s: ComplexPoint
    a: ShiftParameter
    entries: tuple[SnEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def value(self, n: int) -> ComplexPoint:
        return self.entries[n - 1].value


@dataclass(frozen=True)
class TruncationBound:
    """Dominating-series term bound at index n for parameters (sigma, a)."""

    n: int
    sigma: MpReal
    a: ShiftParameter
    bound: MpReal


def _internal_bits(cfg_bits: int, n: int) -> int:
    return cfg_bits + n + 32


def _is_nonpositive_int(s: ComplexPoint) -> bool:
    return s.is_real and s.re.value <= 0 and mpmath.isint(s.re.value)


# ----------------------------------------------------------------------
# cancellation accounting
# ----------------------------------------------------------------------


def _log2_max_term(n: int, a: float, sigma: float) -> float:
    """log2 of max_k C(n-1,k) (k+a)^(-sigma), via a local scan at the peak.

    |(k+a)^(-s)| = (k+a)^(-Re s) exactly since k+a > 0, so the float scan
    is only locating the peak of a smooth product.
    """
    if n == 1:
        return -sigma * math.log2(a)

    def term(k: int) -> float:
        return (
            (math.lgamma(n) - math.lgamma(k + 1) - math.lgamma(n - k)) / _LN2
            - sigma * math.log2(k + a)
        )

    center = (n - 1) / 2 if sigma >= 0 else n - 1
    ks = {0, n - 1}
    for d in range(-3, 4):
        k = int(center) + d
        if 0 <= k <= n - 1:
            ks.add(k)
    return max(term(k) for k in ks)


def _cancellation_bits(n, a_f, sigma_f, log2_value: float | None, fallback_bits: int) -> int:
    """Bits lost to alternating cancellation; log2_value None means exact zero."""
    top = _log2_max_term(n, a_f, sigma_f)
    if log2_value is not None:
        return max(0, math.ceil(top - log2_value))
    return max(0, math.ceil(top) + fallback_bits)


def _log2_abs(v) -> float | None:
    """log2 |v| for mpf/mpc without float overflow; None for zero."""
    if v == 0:
        return None
    return float(mpmath.mag(v))


# ----------------------------------------------------------------------
# single-index evaluation
# ----------------------------------------------------------------------


def s_n_direct(n: int, s, a, cfg: EvalConfig) -> SnValue:
    """S_n(s, a) with measured cancellation, at escalated internal precision."""
    if n < 1:
        raise DomainError("n must be >= 1")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if n == 1:
        return SnValue(ComplexPoint(1, 0, cfg.precision_bits), 0)
    if _is_nonpositive_int(s):
        return _s_n_exact(n, int(s.re.value), a, cfg)
    bits = _internal_bits(cfg.precision_bits, n)
    av, sv = a.a.value, s.to_mpc()
    with mp.workprec(bits):
        acc = mpc(0)
        sign = 1
        c = 1  # C(n-1, k) by multiplicative recurrence, exact
        for k in range(n):
            acc += sign * c * mpmath.power(k + av, -sv)
            c = c * (n - 1 - k) // (k + 1)
            sign = -sign
        log2_mag = _log2_abs(acc)
    cancel = _cancellation_bits(
        n, float(av), float(s.re.value), log2_mag, cfg.precision_bits
    )
    return SnValue(ComplexPoint._raw(acc, cfg.precision_bits), cancel)


def _s_n_exact(n: int, neg_k: int, a: ShiftParameter, cfg: EvalConfig) -> SnValue:
    """Exact rational path for s = -k, k >= 0; zeros come out exactly zero."""
    k = -neg_k
    af = a.a.to_fraction()
    acc = Fraction(0)
    top = Fraction(0)
    sign = 1
    c = 1
    for j in range(n):
        term = c * (j + af) ** k
        top = max(top, term)
        acc += sign * term
        c = c * (n - 1 - j) // (j + 1)
        sign = -sign
    value = ComplexPoint(
        MpReal(acc, cfg.precision_bits), MpReal(0, cfg.precision_bits)
    )
    if top == 0:
        cancel = 0
    elif acc == 0:
        cancel = max(0, _log2_fraction(top) + cfg.precision_bits)
    else:
        cancel = max(0, _log2_fraction(top / abs(acc)))
    return SnValue(value, cancel)


def _log2_fraction(fr: Fraction) -> int:
    # within one bit, which is all cancellation reporting needs
    return fr.numerator.bit_length() - fr.denominator.bit_length()


def s_n_shifted(n: int, s, a, cfg: EvalConfig) -> ComplexPoint:
    """S_n via the index-shifted form -(1/n) sum C(n,m)(-1)^m m (m+a-1)^(-s).

    Used for n >= 2; at n = 1 the explicit S_1 = 1 convention takes
    precedence (the shifted form would give a^(-s) there).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    if n == 1:
        return ComplexPoint(1, 0, cfg.precision_bits)
    bits = _internal_bits(cfg.precision_bits, n)
    av, sv = a.a.value, s.to_mpc()
    with mp.workprec(bits):
        acc = mpc(0)
        sign = -1  # (-1)^m at m = 1
        c = n  # C(n, m) at m = 1
        for m in range(1, n + 1):
            acc += sign * c * m * mpmath.power(m + av - 1, -sv)
            c = c * (n - m) // (m + 1)
            sign = -sign
        acc = -acc / n
    return ComplexPoint._raw(acc, cfg.precision_bits)


# ----------------------------------------------------------------------
# batch evaluation: fixed-point forward-difference table
# ----------------------------------------------------------------------


def _mpf_to_fixed(x: mpf, frac_bits: int) -> int:
    sgn, man, exp, _bc = x._mpf_
    man = int(man)
    if sgn:
        man = -man
    shift = exp + frac_bits
    return man << shift if shift >= 0 else man >> (-shift)


def _fixed_to_mpf(v: int, frac_bits: int, bits: int) -> mpf:
    with mp.workprec(bits + 8):
        return mpmath.ldexp(mpf(v), -frac_bits)


def _diff_table_leading(
    fs: list, P: int, real: bool
) -> list[tuple[int, int]]:
    """Leading entries of every forward-difference level, in fixed point.

    ``fs`` holds mpf/mpc samples; the returned list has len(fs) pairs of
    fixed-point ints, entry m being the leading value of level m (that is,
    sum_k (-1)^k C(m,k) fs[k]).
    """
    if real:
        re_row = [_mpf_to_fixed(v, P) for v in fs]
        im_row = None
    else:
        re_row = [_mpf_to_fixed(v.real, P) for v in fs]
        im_row = [_mpf_to_fixed(v.imag, P) for v in fs]
    out = [(re_row[0], 0 if im_row is None else im_row[0])]
    for _level in range(1, len(fs)):
        re_row = [x - y for x, y in zip(re_row, re_row[1:])]
        if im_row is not None:
            im_row = [x - y for x, y in zip(im_row, im_row[1:])]
        out.append((re_row[0], 0 if im_row is None else im_row[0]))
    return out


def _sn_prefix_raw(
    s: ComplexPoint, a: ShiftParameter, n_max: int, out_bits: int
) -> tuple[list, list[int]]:
    """Values S_1..S_{n_max} (natural first entry a^-s at n=1) plus cancellation.

    Runs the forward-difference table over f(k) = (k+a)^(-s) in fixed-point
    integers at out_bits + n_max + 32 fractional bits.
    """
    P = _internal_bits(out_bits, n_max)
    av = a.a.value
    sv = s.to_mpc()
    real = s.is_real
    sigma_f = float(s.re.value)
    a_f = float(av)
    with mp.workprec(P + 16):
        if real:
            sr = s.re.value
            fs = [mpmath.power(k + av, -sr) for k in range(n_max)]
        else:
            fs = [mpmath.power(k + av, -sv) for k in range(n_max)]
        raw = _diff_table_leading(fs, P, real)
    values = []
    cancels = []
    for idx, (vr, vi) in enumerate(raw):
        n = idx + 1
        with mp.workprec(out_bits):
            if vi == 0:
                val = mpc(_fixed_to_mpf(vr, P, out_bits))
            else:
                val = mpc(
                    _fixed_to_mpf(vr, P, out_bits), _fixed_to_mpf(vi, P, out_bits)
                )
        cancels.append(_cancellation_bits(n, a_f, sigma_f, _log2_abs(val), out_bits))
        values.append(val)
    return values, cancels


def sn_shifted_prefix(s, a, n_max: int, cfg: EvalConfig) -> list[ComplexPoint]:
    """S_1..S_{n_max} through the index-shifted form, batched.

    With h(m) = m (m+a-1)^(-s) the shifted sum is the n-th alternating
    binomial transform of h divided by -n, so one difference table over
    h(0..n_max) yields the whole prefix.  Entry n = 1 keeps the S_1 = 1
    convention (matching ``s_n_shifted``).
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    out_bits = cfg.precision_bits
    P = _internal_bits(out_bits, n_max + 1)
    av = a.a.value
    sv = s.to_mpc()
    real = s.is_real
    with mp.workprec(P + 16):
        if real:
            sr = s.re.value
            hs = [mpf(0)] + [
                m * mpmath.power(m + av - 1, -sr) for m in range(1, n_max + 1)
            ]
        else:
            hs = [mpc(0)] + [
                m * mpmath.power(m + av - 1, -sv) for m in range(1, n_max + 1)
            ]
        raw = _diff_table_leading(hs, P, real)
    out = [ComplexPoint(1, 0, out_bits)]
    for n in range(2, n_max + 1):
        vr, vi = raw[n]
        with mp.workprec(out_bits + 8):
            val = mpc(_fixed_to_mpf(vr, P, out_bits), _fixed_to_mpf(vi, P, out_bits))
            val = -val / n
        out.append(ComplexPoint._raw(val, out_bits))
    return out


_table_cache: dict[tuple, SnTable] = {}
_table_lock = threading.Lock()


def sn_table(s, a, n_max: int, cfg: EvalConfig) -> SnTable:
    """Prefix table S_1..S_{n_max}; memoized by (s, a, precision).

    Entry n = 1 carries the conventional value 1.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    key = (
        s.re.value._mpf_,
        s.im.value._mpf_,
        a.a.value._mpf_,
        cfg.precision_bits,
    )
    with _table_lock:
        hit = _table_cache.get(key)
    if hit is not None and len(hit) >= n_max:
        return hit
    values, cancels = _sn_prefix_raw(s, a, n_max, cfg.precision_bits)
    entries = []
    for idx in range(n_max):
        n = idx + 1
        if n == 1:
            entries.append(SnEntry(1, ComplexPoint(1, 0, cfg.precision_bits), 0))
        else:
            entries.append(
                SnEntry(
                    n,
                    ComplexPoint._raw(values[idx], cfg.precision_bits),
                    cancels[idx],
                )
            )
    table = SnTable(s=s, a=a, entries=tuple(entries))
    with _table_lock:
        if len(_table_cache) > 16:
            _table_cache.clear()
        _table_cache[key] = table
    return table


# ----------------------------------------------------------------------
# generalized Stirling specialization
# ----------------------------------------------------------------------


def _frac_jet_mul(p: list[Fraction], q: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, pi in enumerate(p):
        if i >= n or pi == 0:
            continue
        for j, qj in enumerate(q):
            if i + j >= n:
                break
            if qj:
                out[i + j] += pi * qj
    return out


def stirling_generalized_exact(n: int, k: int, a: Fraction) -> Fraction:
    """S_n(-k, a) as the k-th derivative at 0 of e^{at}(1-e^t)^(n-1), exact.

    The power n-1 matches the defining binomial sum: its series starts at
    t^(n-1), so the value vanishes identically for n >= k+2.  The n = 1
    value follows the S_1 = 1 convention (not the jet of e^{at}).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if k < 0:
        raise DomainError("k must be >= 0")
    if n == 1:
        return Fraction(1)
    if n - 1 > k:
        return Fraction(0)
    order = k + 1
    # jet of (1 - e^t): -t/1! - t^2/2! - ...
    base = [Fraction(0)] + [
        -Fraction(1, math.factorial(j)) for j in range(1, order)
    ]
    power = [Fraction(1)] + [Fraction(0)] * (order - 1)
    for _ in range(n - 1):
        power = _frac_jet_mul(power, base, order)
    expa = [Fraction(a) ** j / math.factorial(j) for j in range(order)]
    prod = _frac_jet_mul(expa, power, order)
    return prod[k] * math.factorial(k)


def stirling_generalized(n: int, k: int, a) -> MpReal:
    """S_n(-k, a) by exact jet arithmetic, rounded to the shift's precision."""
    bits = _infer_bits(a)
    a = ShiftParameter.coerce(a, bits)
    exact = stirling_generalized_exact(n, k, a.a.to_fraction())
    return MpReal(exact, a.a.precision_bits)


# ----------------------------------------------------------------------
# asymptotic estimate and dominating bounds
# ----------------------------------------------------------------------


def s_n_asymptotic(n: int, s, a, precision_bits: int | None = None) -> ComplexPoint:
    """Large-n estimate of S_n(s, a).

    Gamma(1-a) / (n^a (log n)^(1-s) Gamma(s)) for 0 < a < 1, and
    1 / (n (log n)^(1-s) Gamma(s)) at a = 1.  Only the magnitude scale
    is asymptotically exact; convergence in n is logarithmic.
    """
    if n < 3:
        raise DomainError("estimate needs n >= 3 (log n > 1)")
    if precision_bits is None:
        precision_bits = _infer_bits(s, a)
    s = ComplexPoint.coerce(s, precision_bits)
    a = ShiftParameter.coerce(a, precision_bits)
    a.require_standard()
    if _is_nonpositive_int(s):
        raise DomainError(
            "estimate undefined at non-positive integer s (sums are eventually zero)"
        )
    if not s.re.value > 0:
        raise DomainError("estimate stated for Re(s) > 0 only")
    bits = s.precision_bits
    with mp.workprec(bits + 8):
        sv = s.to_mpc()
        av = a.a.value
        ln_n = mpmath.log(n)
        # principal branch of (log n)^(s-1); log n > 0 makes this natural
        logpow = mpmath.exp((sv - 1) * mpmath.log(ln_n))
        gs = mpmath.gamma(sv)
        if av == 1:
            est = logpow / (n * gs)
        else:
            est = mpmath.gamma(1 - av) * logpow / (mpmath.power(n, av) * gs)
    return ComplexPoint._raw(est, bits)


def _split_point(a_val: mpf) -> mpf:
    # exponential split e^{-theta t}: the classic theta = 1/2 needs a > 1/2
    return mpf(1) / 2 if a_val > mpf(1) / 2 else a_val / 2


def dominating_term_bound(n: int, sigma, a, precision_bits: int | None = None) -> MpReal:
    """Bound on the n-th term of the dominating (1/(n+1)-weighted) series.

    For a > 1/2 this is the closed-form bound
        (1 - 1/(2n-1))^(n-1) * Gamma(sigma) / ((a-1/2)^sigma (n+1) sqrt(2n-1)),
    obtained by splitting off e^{-t/2}; for a <= 1/2 the split uses
    e^{-theta t} with theta = a/2 instead, keeping a usable bound on the
    full shift range.
    """
    if n < 2:
        raise DomainError("bound defined for n >= 2")
    if precision_bits is None:
        precision_bits = _infer_bits(sigma, a)
    sigma = MpReal.coerce(sigma, precision_bits)
    if not sigma.value > 0:
        raise DomainError("bound requires sigma > 0")
    a = ShiftParameter.coerce(a, precision_bits)
    a.require_standard()
    bits = max(sigma.precision_bits, a.a.precision_bits)
    with mp.workprec(bits + 8):
        sg = sigma.value
        av = a.a.value
        theta = _split_point(av)
        gs = mpmath.gamma(sg)
        if theta == mpf(1) / 2:
            peak = mpmath.power(1 - mpf(1) / (2 * n - 1), n - 1) / mpmath.sqrt(
                2 * n - 1
            )
        else:
            # max of (1-e^{-t})^{n-1} e^{-theta t} at e^{-t} = theta/(n-1+theta)
            q = theta / (n - 1 + theta)
            peak = mpmath.power(1 - q, n - 1) * mpmath.power(q, theta)
        bound = peak * gs / (mpmath.power(av - theta, sg) * (n + 1))
    return MpReal._raw(bound, bits)


def truncation_bound(n: int, sigma, a, precision_bits: int | None = None) -> TruncationBound:
    """``dominating_term_bound`` packaged with its parameters."""
    if precision_bits is None:
        precision_bits = _infer_bits(sigma, a)
    b = dominating_term_bound(n, sigma, a, precision_bits)
    return TruncationBound(
        n=n,
        sigma=MpReal.coerce(sigma, precision_bits),
        a=ShiftParameter.coerce(a, precision_bits),
        bound=b,
    )


def sn_magnitude_bound_raw(n: int, sigma: mpf, a_val: mpf, gamma_s_abs: mpf) -> mpf:
    """Upper bound on |S_n(s, a)| for Re(s) = sigma > 0, n >= 2 (raw mpf).

    |S_n| <= Gamma(sigma) * peak / (|Gamma(s)| (a-theta)^sigma); used by the
    series evaluator to assemble certified truncation tails.
    """
    theta = _split_point(a_val)
    if theta == mpf(1) / 2:
        peak = mpmath.power(1 - mpf(1) / (2 * n - 1), n - 1) / mpmath.sqrt(2 * n - 1)
    else:
        q = theta / (n - 1 + theta)
        peak = mpmath.power(1 - q, n - 1) * mpmath.power(q, theta)
    return mpmath.gamma(sigma) * peak / (mpmath.power(a_val - theta, sigma) * gamma_s_abs)


def sn_tail_bound_raw(
    n_from: int, sigma: mpf, a_val: mpf, gamma_s_abs: mpf, weight_c_abs: mpf
) -> mpf:
    """Certified bound on sum_{n > n_from} |S_n| (1/(n+1) + |c|/n), raw mpf.

    Uses |S_n| <= C * peak(n) and 1/(n+1) + |c|/n <= (1+|c|)/n, then sums
    the closed-form majorant:
      theta = 1/2:  peak(n)/n <= e^(-1/3) n^(-3/2),  tail <= 2 e^(-1/3)/sqrt(N)
      theta = a/2:  peak(n) <= (theta/(n-1))^theta,  tail <= theta^(theta-1) (N-1)^(-theta)
    """
    theta = _split_point(a_val)
    c0 = (
        mpmath.gamma(sigma)
        * (1 + weight_c_abs)
        / (mpmath.power(a_val - theta, sigma) * gamma_s_abs)
    )
    N = mpf(n_from)
    if theta == mpf(1) / 2:
        return c0 * 2 * mpmath.exp(mpf(-1) / 3) / mpmath.sqrt(N)
    return c0 * mpmath.power(theta, theta - 1) * mpmath.power(N - 1, -theta)

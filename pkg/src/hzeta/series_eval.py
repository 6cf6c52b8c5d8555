"""Series representations of phi(s, a) = (s-1) zeta(s, a).

The main expansion is

    phi(s, a) = sum_{n>=1} S_n(s, a) * (1/(n+1) + (a-1)/n),

where the n = 1 coefficient is the Mellin-consistent value a^(-s): the
series is the termwise integral of the weight-generating identities, and
the n = 1 integral is a^(-s).  (The standalone S_1 = 1 convention of the
sums module is a normalization that only coincides with it at a = 1;
using it here would shift the sum by (1 - a^(-s))(a - 1/2).)

The shifted variant (s-1)(zeta(s,a) - a^(-s)) is the same expansion one
shift up:  sum_n S_n(s, a+1) * (1/(n+1) + a/n),  valid for 0 <= a <= 1.

Convergence is polynomial, ~ n^(-1-a) up to log powers, so this module
is the representation-fidelity route: the reported error combines a
certified dominating-series tail with an empirical tail fit, and the
evaluator refuses to burn quadratic work once the certified bound proves
the target unreachable within ``max_terms``.
"""

from __future__ import annotations

import math
from dataclasses import replace

import mpmath
from mpmath import mp, mpc, mpf

from . import sums
from .integral_eval import EvalResult, _finish
from .precision import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
    ShiftParameter,
)

_STAGE_START = 256
_STAGE_FACTOR = 4


def _weight_raw(n: int, c: mpf) -> mpf:
    return mpf(1) / (n + 1) + c / n


def weight_main(n: int, a) -> MpReal:
    """Series weight 1/(n+1) + (a-1)/n of the main expansion."""
    bits = ShiftParameter.coerce(a, 64).a.precision_bits
    a = ShiftParameter.coerce(a, bits)
    with mp.workprec(bits):
        return MpReal._raw(_weight_raw(n, a.a.value - 1), bits)


def weight_shifted_printed(n: int, a) -> MpReal:
    """The weight 1/(n+1) - a/n; kept for the algebraic weight identity.

    Pairing this weight with the same-shift sums does not reproduce the
    shifted function (see the module docstring); the evaluator uses the
    shift-up expansion instead.
    """
    bits = ShiftParameter.coerce(a, 64).a.precision_bits
    a = ShiftParameter.coerce(a, bits)
    with mp.workprec(bits):
        return MpReal._raw(_weight_raw(n, -a.a.value), bits)


def series_term(n: int, s, a, variant: str = "main", cfg: EvalConfig | None = None) -> ComplexPoint:
    """Diagnostic n-th term of the main or shifted expansion.

    ``main``:    S_n(s, a)   * (1/(n+1) + (a-1)/n)
    ``shifted``: S_n(s, a+1) * (1/(n+1) + a/n)
    Terms use the sums module's S_1 = 1 convention at n = 1; the adaptive
    evaluators replace that single coefficient by its Mellin value.
    """
    cfg = cfg or EvalConfig()
    if variant not in ("main", "shifted"):
        raise DomainError(f"unknown series variant {variant!r}")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    bits = cfg.precision_bits
    with mp.workprec(bits + 8):
        if variant == "main":
            a.require_standard()
            sn = sums.s_n_direct(n, s, a, cfg).value.to_mpc()
            w = _weight_raw(n, a.a.value - 1)
        else:
            a.require_extended()
            a_up = ShiftParameter(MpReal._raw(a.a.value + 1, bits))
            sn = _s_n_any_shift(n, s, a_up, cfg)
            w = _weight_raw(n, a.a.value)
        return ComplexPoint._raw(sn * w, bits)


def _s_n_any_shift(n: int, s: ComplexPoint, a: ShiftParameter, cfg: EvalConfig) -> mpc:
    """Direct S_n for shifts above 1 (the sums module validates (0,1])."""
    if n == 1:
        return mpc(1)
    bits = cfg.precision_bits + n + 32
    av, sv = a.a.value, s.to_mpc()
    with mp.workprec(bits):
        acc = mpc(0)
        sign = 1
        c = 1
        for k in range(n):
            acc += sign * c * mpmath.power(k + av, -sv)
            c = c * (n - 1 - k) // (k + 1)
            sign = -sign
    return acc


def _stages(limit: int) -> list[int]:
    out = []
    n = _STAGE_START
    while n < limit:
        out.append(n)
        n *= _STAGE_FACTOR
    out.append(limit)
    return out


def _model_log(n: int, a_f: float, sigma_f: float) -> float:
    """log of the term-decay model n^(-1-a) (log n)^(sigma-1)."""
    ln = math.log(n)
    return -(1 + a_f) * ln + (sigma_f - 1) * math.log(max(ln, 1.0))


def _fit_tail_raw(
    term_log2: list[tuple[int, float]], n_from: int, a_f: float, sigma_f: float
) -> mpf:
    """Empirical tail: fit C to |term_n| ~ C n^(-1-a)(log n)^(sigma-1), then
    integrate the model past n_from (upper incomplete gamma in log x)."""
    if not term_log2:
        return mpf("inf")
    log2_c = max(
        l2 - _model_log(n, a_f, sigma_f) / math.log(2) for n, l2 in term_log2
    )
    af = mpf(a_f)
    tail_int = mpmath.power(af, -sigma_f) * mpmath.gammainc(
        mpf(sigma_f), af * mpmath.log(n_from)
    )
    return mpf(2) ** log2_c * tail_int


def _phi_series_core(
    s: ComplexPoint,
    a_series: ShiftParameter,
    weight_c: mpf,
    cfg: EvalConfig,
    method: str,
) -> EvalResult:
    """Adaptive evaluation of sum_n S_n(s, a_series)(1/(n+1) + weight_c/n).

    The n = 1 coefficient is taken as a_series^(-s).  Returns normally
    when the certified tail meets the tolerance or when only the caveat
    route applies (Re(s) <= 0, where no certified bound exists); raises
    ``AccuracyError`` carrying the best result otherwise.
    """
    bits = cfg.work_bits
    sigma_f = float(s.re.value)
    a_f = float(a_series.a.value)
    certified_possible = sigma_f > 0

    limit = min(cfg.max_terms, cfg.series_stage_cap)
    work_cfg = replace(
        cfg, precision_bits=bits, target_tol=MpReal(cfg.tol().value, bits)
    )

    with mp.workprec(bits):
        tol = cfg.tol().value
        sv = s.to_mpc()
        first = mpmath.power(a_series.a.value, -sv)  # Mellin-consistent n=1 term
        gamma_s_abs = abs(mpmath.gamma(sv))

    rigorous = mpf("inf")
    fitted = mpf("inf")
    partial = None
    n_done = 0
    unreachable_certified = False

    for stage in _stages(limit):
        table = sums.sn_table(s, a_series, stage, work_cfg)
        with mp.workprec(bits):
            acc = first * _weight_raw(1, weight_c)
            term_log2: list[tuple[int, float]] = []
            sample_from = max(2, (3 * stage) // 4)
            for entry in table.entries[1:]:
                term = entry.value.to_mpc() * _weight_raw(entry.n, weight_c)
                acc += term
                if entry.n >= sample_from and term != 0:
                    term_log2.append((entry.n, float(mpmath.mag(term))))
            partial = acc
            n_done = stage
            fitted = _fit_tail_raw(term_log2, stage, a_f, sigma_f)
            if certified_possible:
                rigorous = sums.sn_tail_bound_raw(
                    stage, s.re.value, a_series.a.value, gamma_s_abs, abs(weight_c)
                )
                if rigorous <= tol:
                    break
                # even the full max_terms run could not certify the target;
                # record that instead of burning quadratic work past the cap
                at_max = sums.sn_tail_bound_raw(
                    cfg.max_terms, s.re.value, a_series.a.value, gamma_s_abs, abs(weight_c)
                )
                unreachable_certified = bool(at_max > tol)

    with mp.workprec(bits):
        # larger of the certified bound and the empirical fit, plus round-off
        roundoff = abs(partial) * mpf(2) ** (8 - bits) * max(1, n_done)
        candidates = [fitted, roundoff]
        if certified_possible:
            candidates.append(rigorous)
        err = max(candidates)

    converged = certified_possible and rigorous <= tol
    flags: tuple[str, ...] = ()
    if not certified_possible:
        flags = ("continuation_caveat",)
    elif not converged:
        flags = ("accuracy_target_missed",)
        if unreachable_certified:
            flags += ("target_unreachable_at_max_terms",)

    result = _finish(
        partial, err, s, cfg, method, n_done, flags, err_fitted=fitted
    )
    if certified_possible and not converged:
        raise AccuracyError(
            f"series tail bound {mpmath.nstr(err, 5)} stayed above the target "
            f"{mpmath.nstr(cfg.tol().value, 5)} (computed {n_done} of "
            f"{cfg.max_terms} requested terms)",
            result=result,
        )
    return result


def phi_series(s, a, cfg: EvalConfig | None = None) -> EvalResult:
    """Series route to phi(s, a) for 0 < a <= 1.

    Globally convergent in s; for Re(s) <= 0 the value is returned with a
    ``continuation_caveat`` flag since only the empirical tail estimate is
    available there.
    """
    cfg = cfg or EvalConfig()
    if cfg.max_terms < 2:
        raise DomainError("series evaluation needs max_terms >= 2")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_standard()
    with mp.workprec(cfg.work_bits):
        c = a.a.value - 1
    return _phi_series_core(s, a, c, cfg, "series")


def phi_shifted_series(s, a, cfg: EvalConfig | None = None) -> EvalResult:
    """Series route to (s-1)(zeta(s,a) - a^(-s)) for 0 <= a <= 1.

    Expands at shift a+1 with weights 1/(n+1) + a/n; at a = 0 this is the
    alternating-sum expansion of (s-1) zeta(s).
    """
    cfg = cfg or EvalConfig()
    if cfg.max_terms < 2:
        raise DomainError("series evaluation needs max_terms >= 2")
    s = ComplexPoint.coerce(s, cfg.precision_bits)
    a = ShiftParameter.coerce(a, cfg.precision_bits)
    a.require_extended()
    with mp.workprec(cfg.work_bits):
        a_up = ShiftParameter(MpReal._raw(a.a.value + 1, cfg.work_bits))
        c = a.a.value
    return _phi_series_core(s, a_up, c, cfg, "shifted-series")

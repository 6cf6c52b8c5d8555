"""Double-exponential quadrature for half-line integrals.

The engine integrates f over (0, oo) by splitting at t = 1:

* on (0, 1] the substitution t = exp(-u) turns an integrable endpoint
  power t**(s-1) (and any log-power weights) into smooth exponential
  decay in u, truncated where the decay defeats the working precision;
* on [1, oo) the integrand already decays like exp(-rate*t), so the
  interval is truncated accordingly.

Both pieces are handled by tanh-sinh rules on finite intervals with
node counts doubling per level; convergence is declared when successive
levels agree to the requested tolerance, and the last level difference
is the reported error estimate.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

import mpmath
from mpmath import mp, mpc, mpf

from .precision import AccuracyError, ComplexPoint, EvalConfig, MpReal

_LN2 = math.log(2)

# node tables are shared across calls; key (bits, level)
_node_cache: dict[tuple[int, int], list[tuple[mpf, mpf]]] = {}
_node_lock = threading.Lock()


@dataclass(frozen=True)
class QuadratureRule:
    """Identifies the quadrature scheme and its refinement depth."""

    kind: str = "double_exponential_halfline"
    levels: int = 10


def _rule_cutoff(bits: int) -> float:
    # nodes are needed until 1 - |x| ~ 2^-(bits+8); x = tanh(pi/2 sinh(T))
    return math.asinh((bits + 9) * _LN2 / math.pi)


def _nodes(bits: int, level: int) -> list[tuple[mpf, mpf]]:
    """Positive-abscissa tanh-sinh nodes introduced at refinement `level`.

    Level 0 holds the nodes of the coarsest grid (h = 1); level L > 0
    holds only the odd multiples of h = 2**-L, so levels accumulate.
    Nodes come as (x, w) with x in (0, 1); the symmetric negative nodes
    reuse the same weights.
    """
    key = (bits, level)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    with _node_lock:
        cached = _node_cache.get(key)
        if cached is not None:
            return cached
        T = _rule_cutoff(bits)
        h = mpf(1) / (1 << level)
        out: list[tuple[mpf, mpf]] = []
        with mp.workprec(bits + 16):
            half_pi = mpmath.pi / 2
            ks = range(0, int(T / h) + 2) if level == 0 else range(1, int(T / h) + 2, 2)
            for k in ks:
                u = k * h
                if float(u) > T + 1:
                    break
                su = mpmath.sinh(u)
                ch = mpmath.cosh(u)
                ex = mpmath.exp(half_pi * su)
                den = (ex + 1 / ex) / 2  # cosh(pi/2 sinh u)
                x = mpmath.tanh(half_pi * su)
                w = half_pi * ch / (den * den)
                if 1 - abs(x) < mpf(2) ** (-(bits + 8)):
                    break
                out.append((x, w))
        _node_cache[key] = out
        return out


@dataclass
class _Outcome:
    value: mpc
    err: mpf
    nodes: int
    converged: bool
    level_errs: list


def _integrate_finite(
    f: Callable[[mpf], mpc],
    lo: mpf,
    hi: mpf,
    bits: int,
    max_level: int,
    tol: mpf,
) -> _Outcome:
    """Tanh-sinh on [lo, hi]; f must be finite on the closed interval."""
    mid = (lo + hi) / 2
    rad = (hi - lo) / 2
    total = mpc(0)
    nodes_used = 0
    prev = None
    err = mpf("inf")
    level_errs = []
    converged = False
    for level in range(0, max_level + 1):
        h = mpf(1) / (1 << level)
        part = mpc(0)
        for k, (x, w) in enumerate(_nodes(bits, level)):
            if level == 0 and k == 0:
                part += w * f(mid)
                nodes_used += 1
                continue
            dx = rad * x
            part += w * (f(mid + dx) + f(mid - dx))
            nodes_used += 2
        total += part
        estimate = total * h * rad
        if prev is not None:
            err = abs(estimate - prev)
            level_errs.append(err)
            scale = max(mpf(1), abs(estimate))
            if err <= tol * scale:
                converged = True
                prev = estimate
                break
        prev = estimate
    return _Outcome(mpc(prev), err, nodes_used, converged, level_errs)


def _upper_cutoff(rate: float, poly_degree: int, bits: int) -> float:
    """Smallest T with exp(-rate*T) * T**deg below the working precision."""
    if rate <= 0:
        raise ValueError("decay rate must be positive")
    target = (bits + 12) * _LN2
    T = target / rate + 1
    for _ in range(5):
        T = (target + poly_degree * max(1.0, math.log(T))) / rate
    return max(T, 2.0)


def integrate_halfline_raw(
    f: Callable[[mpf], mpc],
    bits: int,
    max_level: int,
    tol: mpf,
    decay_rate: float,
    origin_power: float,
    poly_degree: int = 0,
) -> _Outcome:
    """Integrate f over (0, oo) at `bits` working precision.

    ``decay_rate``: r such that |f(t)| <~ e^{-r t} poly(t) as t -> oo.
    ``origin_power``: p such that f(t) ~ C t^p as t -> 0+ (p > -1).
    ``poly_degree``: degree of the polynomial/log-power factor, used
    only to pad the truncation points.
    """
    if origin_power <= -1:
        raise ValueError("origin_power must exceed -1 for integrability")
    with mp.workprec(bits + 16):
        # (0, 1]: t = exp(-u); decay in u is governed by t**(origin_power+1)
        U = _upper_cutoff(origin_power + 1.0, poly_degree, bits)
        near = _integrate_finite(
            lambda u: f(mpmath.exp(-u)) * mpmath.exp(-u),
            mpf(0),
            mpf(U),
            bits,
            max_level,
            tol / 2,
        )
        # [1, T]: truncate where the exponential tail is negligible
        T = _upper_cutoff(decay_rate, poly_degree + 3, bits)
        far = _integrate_finite(f, mpf(1), mpf(T), bits, max_level, tol / 2)
        value = near.value + far.value
        err = near.err + far.err
    return _Outcome(
        value,
        err,
        near.nodes + far.nodes,
        near.converged and far.converged,
        [near.level_errs, far.level_errs],
    )


def quad_halfline(
    f: Callable[[mpf], mpc],
    cfg: EvalConfig,
    *,
    decay_rate: float = 1.0,
    origin_power: float = 0.0,
    poly_degree: int = 0,
) -> tuple[ComplexPoint, MpReal]:
    """Half-line quadrature honoring the config's precision and depth.

    The callback receives mpf abscissae at the working precision and
    must return mpf or mpc values.  Raises ``AccuracyError`` (with the
    best estimate attached) if the levels are exhausted before two
    successive refinements agree to the target tolerance.
    """
    bits = cfg.work_bits
    tol = cfg.tol().value
    out = integrate_halfline_raw(
        f, bits, cfg.quad_levels, tol, decay_rate, origin_power, poly_degree
    )
    value = ComplexPoint._raw(out.value, cfg.precision_bits)
    err = MpReal._raw(out.err, cfg.precision_bits)
    if not out.converged:
        raise AccuracyError(
            f"quadrature did not reach tolerance {mpmath.nstr(tol, 5)} "
            f"within {cfg.quad_levels} levels (err ~ {mpmath.nstr(out.err, 5)})",
            result=(value, err),
        )
    return value, err

"""Command-line front end.

Subcommands:

* ``eval``    - evaluate zeta(s, a) / phi(s, a) by a chosen method;
* ``laurent`` - coefficient table of the expansion about s0;
* ``sn``      - table of the alternating sums with optional estimates;
* ``check``   - self-check suites (identities, sums, method agreement).

Output formats: human text, CSV, and JSON with deterministic number
formatting (decimal strings, round-half-even, at the requested digits).
Exit codes: 0 success, 1 usage error, 2 accuracy target not met.
The environment variable ``HZETA_DIGITS`` overrides the default digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from . import __version__, kernels, laurent, oracles, sums
from .kernels import identity_check_bits
from .integral_eval import (
    EvalResult,
    phi_continued,
    phi_integral,
    phi_shifted_integral,
)
from .precision import (
    AccuracyError,
    ComplexPoint,
    DomainError,
    EvalConfig,
    MpReal,
)
from .series_eval import phi_series, phi_shifted_series

DEFAULT_DIGITS = 30
ENV_DIGITS = "HZETA_DIGITS"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ACCURACY = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we keep 2 for accuracy
        raise UsageError(message)


# ----------------------------------------------------------------------
# number formatting
# ----------------------------------------------------------------------


def format_real(x, digits: int) -> str:
    """Deterministic decimal string at `digits` significant digits.

    The binary value converts to decimal exactly, then rounds half-even
    once; the result re-parses to the same string, which is what makes
    golden files and JSON round-trips byte-stable.
    """
    v = x.value if isinstance(x, MpReal) else x
    if not mpmath.isfinite(v):
        return str(v)
    if v == 0:
        return "0"
    sgn, man, exp, _bc = v._mpf_
    man = int(man)
    if sgn:
        man = -man
    with localcontext() as ctx:
        ctx.prec = max(digits + 15, 25)
        d = Decimal(man)
        if exp >= 0:
            d *= Decimal(2) ** exp
        else:
            d /= Decimal(2) ** (-exp)
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        d = +d
    return str(d)


def format_complex_pair(z: ComplexPoint, digits: int) -> dict:
    return {"re": format_real(z.re, digits), "im": format_real(z.im, digits)}


def format_complex_text(z: ComplexPoint, digits: int) -> str:
    re_s = format_real(z.re, digits)
    if z.im.value == 0:
        return re_s
    im = z.im
    sign = "+" if im.value >= 0 else "-"
    return f"{re_s}{sign}{format_real(abs(im), digits)}i"


# ----------------------------------------------------------------------
# argument plumbing
# ----------------------------------------------------------------------


def _parse_complex(text: str, bits: int) -> ComplexPoint:
    parts = text.split(",")
    if len(parts) == 1:
        return ComplexPoint(MpReal(parts[0].strip(), bits), MpReal(0, bits))
    if len(parts) == 2:
        return ComplexPoint(MpReal(parts[0].strip(), bits), MpReal(parts[1].strip(), bits))
    raise UsageError(f"cannot parse complex number {text!r} (use RE or RE,IM)")


def _default_digits() -> int:
    env = os.environ.get(ENV_DIGITS)
    if env:
        try:
            return max(5, int(env))
        except ValueError:
            pass
    return DEFAULT_DIGITS


def _config(args) -> EvalConfig:
    digits = getattr(args, "digits", None) or _default_digits()
    kwargs = {}
    if getattr(args, "max_terms", None):
        kwargs["max_terms"] = args.max_terms
    return EvalConfig.from_digits(digits, **kwargs)


def _emit(payload: dict, rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
        return
    if fmt == "csv":
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        return
    # text
    for key, value in payload["inputs"].items():
        out.write(f"{key}: {value}\n")
    for row in rows:
        for key, value in row.items():
            out.write(f"  {key}: {value}\n")
        out.write("\n")
    for err in payload["errors"]:
        out.write(f"warning: {err}\n")


def _flatten(pairs: dict, prefix: str) -> dict:
    return {f"{prefix}_re": pairs["re"], f"{prefix}_im": pairs["im"]}


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------


_METHODS = (
    "auto",
    "integral",
    "series",
    "continued",
    "shifted-integral",
    "shifted-series",
    "oracle",
)


def _run_eval(args, out) -> int:
    cfg = _config(args)
    bits = cfg.precision_bits
    s = _parse_complex(args.s, bits)
    a = MpReal(args.a, bits)
    digits = args.digits or _default_digits()
    method = args.method
    if method == "auto":
        method = "integral" if s.re.value > 0 else "continued"

    exit_code = EXIT_OK
    errors: list[str] = []
    try:
        if method == "integral":
            result = phi_integral(s, a, cfg)
        elif method == "series":
            result = phi_series(s, a, cfg)
        elif method == "continued":
            result = phi_continued(s, a, args.k, cfg)
        elif method == "shifted-integral":
            result = phi_shifted_integral(s, a, cfg)
        elif method == "shifted-series":
            result = phi_shifted_series(s, a, cfg)
        elif method == "oracle":
            z = oracles.dirichlet_oracle(s, a, cfg)
            with mp.workprec(cfg.work_bits):
                phi = ComplexPoint._raw(z.to_mpc() * (s.to_mpc() - 1), bits)
                err = MpReal._raw(abs(z.to_mpc()) * mpf(10) ** (-cfg.digits + 2), bits)
            result = EvalResult(
                phi=phi, zeta=z, pole=False, err_estimate=err,
                method="oracle", terms_or_nodes=0,
            )
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown method {method}")
    except AccuracyError as exc:
        result = exc.result
        if isinstance(result, tuple) or result is None:
            errors.append(str(exc))
            result = None
        else:
            errors.append(str(exc))
        exit_code = EXIT_ACCURACY

    rows = []
    if result is not None:
        shifted = method.startswith("shifted")
        row = {
            "method": result.method,
            "pole": str(result.pole).lower(),
        }
        zlabel = "zeta_shifted" if shifted else "zeta"
        if result.pole:
            row[zlabel] = "pole"
        elif result.zeta is not None:
            row[zlabel] = format_complex_text(result.zeta, digits)
        row["phi"] = format_complex_text(result.phi, digits)
        row["err_estimate"] = format_real(result.err_estimate, digits)
        row["terms_or_nodes"] = str(result.terms_or_nodes)
        if result.flags:
            row["flags"] = ";".join(result.flags)
        rows.append(row)

    payload = {
        "command": "eval",
        "inputs": {
            "s": format_complex_text(s, digits),
            "a": format_real(a, digits),
            "method": method,
            "digits": str(digits),
            "max_terms": str(cfg.max_terms),
        },
        "results": [_json_result(result, method, digits)] if result is not None else [],
        "errors": errors,
        "version": __version__,
    }
    _emit(payload, rows, args.format, out)
    return exit_code


def _json_result(result: EvalResult, method: str, digits: int) -> dict:
    out = {
        "phi": format_complex_pair(result.phi, digits),
        "zeta": None if result.zeta is None else format_complex_pair(result.zeta, digits),
        "pole": result.pole,
        "err_estimate": format_real(result.err_estimate, digits),
        "method": result.method,
        "terms_or_nodes": result.terms_or_nodes,
        "flags": list(result.flags),
    }
    if result.err_fitted is not None:
        out["err_fitted"] = format_real(result.err_fitted, digits)
    return out


# ----------------------------------------------------------------------
# laurent
# ----------------------------------------------------------------------


def _run_laurent(args, out) -> int:
    cfg = _config(args)
    bits = cfg.precision_bits
    s0 = _parse_complex(args.s0, bits)
    a = MpReal(args.a, bits)
    digits = args.digits or _default_digits()
    expansion = laurent.laurent_expand(s0, a, args.order, cfg)

    rows = []
    if args.berndt_normalization:
        gamma0, shifted = laurent.to_pole_normalized(expansion)
        rows.append(
            {
                "n": "const",
                "gamma": format_complex_text(gamma0, digits),
                "err": format_real(expansion.err_estimates[0], digits),
            }
        )
        for n, g in enumerate(shifted):
            rows.append(
                {
                    "n": str(n),
                    "gamma": format_complex_text(g, digits),
                    "err": format_real(expansion.err_estimates[n + 1], digits),
                }
            )
    else:
        for n in range(args.order + 1):
            rows.append(
                {
                    "n": str(n),
                    "a_n": format_complex_text(expansion.a_coeffs[n], digits),
                    "c_n": format_complex_text(expansion.c_coeffs[n], digits),
                    "gamma_n": format_complex_text(expansion.gamma_coeffs[n], digits),
                    "err": format_real(expansion.err_estimates[n], digits),
                }
            )

    payload = {
        "command": "laurent",
        "inputs": {
            "s0": format_complex_text(s0, digits),
            "a": format_real(a, digits),
            "order": str(args.order),
            "digits": str(digits),
            "berndt_normalization": bool(args.berndt_normalization),
        },
        "results": rows,
        "errors": [],
        "version": __version__,
    }
    _emit(payload, rows, args.format, out)
    return EXIT_OK


# ----------------------------------------------------------------------
# sn
# ----------------------------------------------------------------------


def _run_sn(args, out) -> int:
    cfg = _config(args)
    bits = cfg.precision_bits
    s = _parse_complex(args.s, bits)
    a = MpReal(args.a, bits)
    digits = args.digits or _default_digits()
    n_max = args.n_max
    table = sums.sn_table(s, a, n_max, cfg)
    shifted = sums.sn_shifted_prefix(s, a, n_max, cfg)

    rows = []
    for entry in table.entries:
        row = {
            "n": str(entry.n),
            "direct": format_complex_text(entry.value, digits),
            "shifted": format_complex_text(shifted[entry.n - 1], digits),
            "cancellation_bits": str(entry.cancellation_bits),
        }
        if args.with_asymptotic:
            try:
                est = sums.s_n_asymptotic(entry.n, s, a, bits)
                row["asymptotic"] = format_complex_text(est, digits)
                with mp.workprec(cfg.work_bits):
                    ev = est.to_mpc()
                    ratio = entry.value.to_mpc() / ev if ev != 0 else mpf("inf")
                row["ratio"] = format_complex_text(
                    ComplexPoint._raw(ratio, bits), digits
                )
            except DomainError:
                row["asymptotic"] = ""
                row["ratio"] = ""
        rows.append(row)

    payload = {
        "command": "sn",
        "inputs": {
            "s": format_complex_text(s, digits),
            "a": format_real(a, digits),
            "n_max": str(n_max),
            "digits": str(digits),
            "with_asymptotic": bool(args.with_asymptotic),
        },
        "results": rows,
        "errors": [],
        "version": __version__,
    }
    _emit(payload, rows, args.format, out)
    return EXIT_OK


# ----------------------------------------------------------------------
# check
# ----------------------------------------------------------------------


def _check_identities(cfg: EvalConfig) -> list[tuple[str, bool]]:
    out = []
    for t in ("0.01", "0.1", "1", "5", "20"):
        for N in (10, 100, 1000):
            bits = identity_check_bits(float(mpf(t)), N, cfg.precision_bits)
            for which in ("n_weight", "n_plus_one_weight"):
                lhs, partial, tail = kernels.identity_lhs_rhs(
                    which, MpReal(t, bits), N
                )
                ok = abs((lhs - partial).value) <= tail.value
                out.append((f"identities.{which}.t={t}.N={N}", ok))
    return out


def _check_sums(cfg: EvalConfig) -> list[tuple[str, bool]]:
    out = []
    rng = random.Random(20240811)
    for i in range(12):
        n = rng.randint(2, 60)
        sigma = rng.uniform(-4, 6)
        tau = rng.uniform(-6, 6)
        a = rng.choice(["0.25", "0.4", "0.5", "0.75", "1.0"])
        s = ComplexPoint(
            MpReal(repr(sigma), cfg.precision_bits),
            MpReal(repr(tau), cfg.precision_bits),
        )
        d = sums.s_n_direct(n, s, a, cfg).value
        h = sums.s_n_shifted(n, s, a, cfg)
        with mp.workprec(cfg.work_bits):
            scale = max(mpf(1), abs(d.to_mpc()))
            ok = abs(d.to_mpc() - h.to_mpc()) <= scale * mpf(10) ** (-cfg.digits + 4)
        out.append((f"sums.equivalence.{i}", bool(ok)))
    for k in range(0, 7):
        for a in ("0.25", "0.5", "1.0"):
            n = k + 2
            v = sums.s_n_direct(n, -k, a, cfg).value
            out.append((f"sums.vanishing.k={k}.a={a}", v.to_mpc() == 0))
    for n in range(1, 9):
        for k in range(0, 7):
            exact = sums.stirling_generalized_exact(n, k, Fraction(1, 4))
            v = sums.s_n_direct(n, -k, MpReal("0.25", cfg.precision_bits), cfg).value
            with mp.workprec(cfg.work_bits):
                want = mpf(exact.numerator) / exact.denominator
                ok = abs(v.to_mpc() - want) <= abs(want) * mpf(10) ** (-cfg.digits + 4) + mpf(
                    10
                ) ** (-cfg.digits)
            out.append((f"sums.stirling.n={n}.k={k}", bool(ok)))
    return out


def _check_agreement(cfg: EvalConfig) -> list[tuple[str, bool]]:
    out = []
    for s_txt in ("2", "3"):
        for a_txt in ("0.5", "1.0"):
            s = MpReal(s_txt, cfg.precision_bits)
            a = MpReal(a_txt, cfg.precision_bits)
            ri = phi_integral(s, a, cfg)
            zo = oracles.dirichlet_oracle(s, a, cfg)
            with mp.workprec(cfg.work_bits):
                phi_o = zo.to_mpc() * (s.value - 1)
                ok = abs(ri.phi.to_mpc() - phi_o) <= max(
                    ri.err_estimate.value, mpf(10) ** (-cfg.digits + 4)
                )
            out.append((f"agreement.integral-vs-oracle.s={s_txt}.a={a_txt}", bool(ok)))
            try:
                rs = phi_series(s, a, cfg)
            except AccuracyError as exc:
                rs = exc.result
            with mp.workprec(cfg.work_bits):
                ok = abs(rs.phi.to_mpc() - ri.phi.to_mpc()) <= (
                    rs.err_estimate.value + ri.err_estimate.value
                )
            out.append((f"agreement.series-vs-integral.s={s_txt}.a={a_txt}", bool(ok)))
    return out


def _run_check(args, out) -> int:
    cfg = EvalConfig.from_digits(args.digits or _default_digits())
    suites = {
        "identities": _check_identities,
        "sums": _check_sums,
        "agreement": _check_agreement,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    results: list[tuple[str, bool]] = []
    for name in names:
        results.extend(suites[name](cfg))
    all_ok = all(ok for _, ok in results)
    if args.format == "json":
        payload = {
            "command": "check",
            "inputs": {"suite": args.suite, "digits": str(cfg.digits)},
            "results": [{"case": case, "pass": ok} for case, ok in results],
            "errors": [],
            "version": __version__,
        }
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
    else:
        for case, ok in results:
            out.write(f"{'PASS' if ok else 'FAIL'} {case}\n")
        out.write(f"{'OK' if all_ok else 'FAILURES'} ({len(results)} checks)\n")
    return EXIT_OK if all_ok else EXIT_ACCURACY


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="hzeta", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate zeta(s, a)")
    p_eval.add_argument("--s", required=True, help="evaluation point RE or RE,IM")
    p_eval.add_argument("--a", required=True, help="shift parameter in (0, 1]")
    p_eval.add_argument("--method", choices=_METHODS, default="auto")
    p_eval.add_argument("--k", type=int, default=None, help="continuation order")
    p_eval.add_argument("--digits", type=int, default=None)
    p_eval.add_argument("--max-terms", dest="max_terms", type=int, default=None)
    p_eval.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p_lau = sub.add_parser("laurent", help="expansion coefficients about s0")
    p_lau.add_argument("--s0", required=True)
    p_lau.add_argument("--a", required=True)
    p_lau.add_argument("--order", type=int, required=True)
    p_lau.add_argument("--digits", type=int, default=None)
    p_lau.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_lau.add_argument(
        "--berndt-normalization",
        action="store_true",
        help="emit the pole-centered indexing (constant plus (s-1)^(n+1) coefficients)",
    )

    p_sn = sub.add_parser("sn", help="table of alternating sums")
    p_sn.add_argument("--n-max", dest="n_max", type=int, required=True)
    p_sn.add_argument("--s", required=True)
    p_sn.add_argument("--a", required=True)
    p_sn.add_argument("--with-asymptotic", action="store_true")
    p_sn.add_argument("--digits", type=int, default=None)
    p_sn.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p_chk = sub.add_parser("check", help="run self-check suites")
    p_chk.add_argument(
        "--suite", choices=("identities", "sums", "agreement", "all"), default="all"
    )
    p_chk.add_argument("--digits", type=int, default=None)
    p_chk.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "order", None) is not None and args.command == "laurent":
            if args.order < 0 or args.order > laurent.ORDER_CAP:
                raise UsageError(f"--order must be in [0, {laurent.ORDER_CAP}]")
        runners = {
            "eval": _run_eval,
            "laurent": _run_laurent,
            "sn": _run_sn,
            "check": _run_check,
        }
        return runners[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

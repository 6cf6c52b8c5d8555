"""Configurable-precision arithmetic contract and shared special functions.

Every value in this package carries its own precision; nothing depends on
ambient global state.  ``MpReal`` and ``ComplexPoint`` wrap mpmath numbers
together with a bit count, and all arithmetic promotes to the larger operand
precision.  The special functions here (gamma, digamma, Bernoulli
polynomials, complex powers) are the shared foundation for the evaluation
and oracle modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Union

import mpmath
from mpmath import mp, mpc, mpf

MIN_PRECISION_BITS = 64

_LOG2_10 = 3.321928094887362  # bits per decimal digit

RealLike = Union["MpReal", mpf, int, float, str, Fraction]


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class PoleError(DomainError):
    """Evaluation was requested exactly at a pole."""


class AccuracyError(ArithmeticError):
    """The requested tolerance could not be certified.

    The best available result is attached as ``result`` so callers can
    still inspect the value and its honestly reported error estimate.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


def bits_for_digits(digits: int) -> int:
    return max(MIN_PRECISION_BITS, int(math.ceil(digits * _LOG2_10)) + 4)


def digits_for_bits(bits: int) -> int:
    return max(1, int(bits / _LOG2_10))


def working_bits(precision_bits: int) -> int:
    """Internal precision for top-level evaluations.

    Runs with ceil(1.2 * requested_digits) + 10 decimal digits so that
    quadrature and series round-off stays below the reported estimates.
    """
    digits = digits_for_bits(precision_bits)
    return bits_for_digits(int(math.ceil(1.2 * digits)) + 10)


def _to_mpf(value: RealLike, bits: int) -> mpf:
    if isinstance(value, MpReal):
        value = value.value
    with mp.workprec(bits):
        if isinstance(value, Fraction):
            return mpf(value.numerator) / mpf(value.denominator)
        return mpf(value)


class MpReal:
    """An arbitrary-precision real plus the precision it was computed at.

    Arithmetic between two ``MpReal`` values is carried out at the maximum
    of the two precisions and the result records that precision.  Values
    are immutable.
    """

    __slots__ = ("value", "precision_bits")

    def __init__(self, value: RealLike = 0, precision_bits: int | None = None):
        if precision_bits is None:
            precision_bits = (
                value.precision_bits if isinstance(value, MpReal) else mp.prec
            )
        precision_bits = int(precision_bits)
        if precision_bits < MIN_PRECISION_BITS:
            raise DomainError(
                f"precision_bits must be >= {MIN_PRECISION_BITS}, got {precision_bits}"
            )
        object.__setattr__(self, "precision_bits", precision_bits)
        object.__setattr__(self, "value", _to_mpf(value, precision_bits))

    @classmethod
    def _raw(cls, value: mpf, bits: int) -> "MpReal":
        """Wrap a raw mpf, rounding it to the declared precision."""
        with mp.workprec(bits):
            value = value + mpf(0)
        obj = object.__new__(cls)
        object.__setattr__(obj, "value", value)
        object.__setattr__(obj, "precision_bits", bits)
        return obj

    @classmethod
    def coerce(cls, value: RealLike, precision_bits: int) -> "MpReal":
        if isinstance(value, MpReal):
            return value
        return cls(value, precision_bits)

    def __setattr__(self, name, _value):
        raise AttributeError(f"MpReal is immutable (cannot set {name!r})")

    # -- arithmetic ---------------------------------------------------

    def _binary(self, other, fn, reverse=False):
        if not isinstance(other, (MpReal, mpf, int, float, str, Fraction)):
            return NotImplemented
        other = MpReal.coerce(other, self.precision_bits)
        bits = max(self.precision_bits, other.precision_bits)
        x, y = (other.value, self.value) if reverse else (self.value, other.value)
        with mp.workprec(bits):
            return MpReal._raw(fn(x, y), bits)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._binary(other, lambda x, y: x - y, reverse=True)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x / y)

    def __rtruediv__(self, other):
        return self._binary(other, lambda x, y: x / y, reverse=True)

    def __pow__(self, other):
        if isinstance(other, int):
            with mp.workprec(self.precision_bits):
                return MpReal._raw(self.value ** other, self.precision_bits)
        other = MpReal.coerce(other, self.precision_bits)
        if self.value <= 0:
            raise DomainError("fractional power requires a positive base")
        return self._binary(other, lambda x, y: mpmath.power(x, y))

    def __neg__(self):
        # mpmath rounds even unary ops at the ambient precision
        with mp.workprec(self.precision_bits):
            return MpReal._raw(-self.value, self.precision_bits)

    def __abs__(self):
        with mp.workprec(self.precision_bits):
            return MpReal._raw(abs(self.value), self.precision_bits)

    # -- comparisons (on value, exact) --------------------------------

    def _cmp_value(self, other):
        if isinstance(other, MpReal):
            return other.value
        if isinstance(other, (mpf, int, float)):
            return other
        return NotImplemented

    def __eq__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value == v

    def __lt__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value < v

    def __le__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value <= v

    def __gt__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value > v

    def __ge__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value >= v

    def __hash__(self):
        return hash(self.value)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"MpReal({mpmath.nstr(self.value, digits_for_bits(self.precision_bits))}, bits={self.precision_bits})"

    def __str__(self):
        return mpmath.nstr(self.value, digits_for_bits(self.precision_bits))

    @property
    def digits(self) -> int:
        return digits_for_bits(self.precision_bits)

    def at_precision(self, precision_bits: int) -> "MpReal":
        return MpReal(self.value, precision_bits)

    def to_fraction(self) -> Fraction:
        """Exact rational value (every binary float is rational)."""
        # an mpf is sign, mantissa, exponent, bit-count with value man * 2**exp
        sgn, man, exp, _bc = self.value._mpf_
        man = int(man)
        if sgn:
            man = -man
        if exp >= 0:
            return Fraction(man * (1 << exp))
        return Fraction(man, 1 << (-exp))


class ComplexPoint:
    """A complex evaluation point whose parts share one precision."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealLike = 0, im: RealLike = 0, precision_bits: int | None = None):
        if precision_bits is None:
            candidates = [
                v.precision_bits for v in (re, im) if isinstance(v, MpReal)
            ]
            precision_bits = max(candidates) if candidates else mp.prec
        precision_bits = max(
            [precision_bits]
            + [v.precision_bits for v in (re, im) if isinstance(v, MpReal)]
        )
        object.__setattr__(self, "re", MpReal.coerce(re, precision_bits).at_precision(precision_bits))
        object.__setattr__(self, "im", MpReal.coerce(im, precision_bits).at_precision(precision_bits))

    def __setattr__(self, name, _value):
        raise AttributeError(f"ComplexPoint is immutable (cannot set {name!r})")

    @classmethod
    def coerce(cls, value, precision_bits: int) -> "ComplexPoint":
        if isinstance(value, ComplexPoint):
            return value
        if isinstance(value, mpc):
            return cls(MpReal(value.real, precision_bits), MpReal(value.imag, precision_bits))
        if isinstance(value, complex):
            return cls(MpReal(value.real, precision_bits), MpReal(value.imag, precision_bits))
        if isinstance(value, tuple) and len(value) == 2:
            return cls(MpReal.coerce(value[0], precision_bits), MpReal.coerce(value[1], precision_bits))
        return cls(MpReal.coerce(value, precision_bits), MpReal(0, precision_bits))

    @classmethod
    def _raw(cls, value: mpc | mpf, bits: int) -> "ComplexPoint":
        with mp.workprec(bits):
            value = mpc(value)
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", MpReal._raw(value.real, bits))
        object.__setattr__(obj, "im", MpReal._raw(value.imag, bits))
        return obj

    @property
    def precision_bits(self) -> int:
        return self.re.precision_bits

    def to_mpc(self) -> mpc:
        # construct at own precision; mpc() rounds at the ambient one
        with mp.workprec(self.precision_bits):
            return mpc(self.re.value, self.im.value)

    @property
    def is_real(self) -> bool:
        return self.im.value == 0

    def conjugate(self) -> "ComplexPoint":
        return ComplexPoint(self.re, -self.im)

    def _binary(self, other, fn, reverse=False):
        try:
            other = ComplexPoint.coerce(other, self.precision_bits)
        except (TypeError, ValueError):
            return NotImplemented
        bits = max(self.precision_bits, other.precision_bits)
        x, y = (other, self) if reverse else (self, other)
        with mp.workprec(bits):
            return ComplexPoint._raw(fn(x.to_mpc(), y.to_mpc()), bits)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._binary(other, lambda x, y: x - y, reverse=True)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x / y)

    def __rtruediv__(self, other):
        return self._binary(other, lambda x, y: x / y, reverse=True)

    def __neg__(self):
        return ComplexPoint(-self.re, -self.im)

    def __abs__(self) -> MpReal:
        with mp.workprec(self.precision_bits):
            return MpReal._raw(abs(self.to_mpc()), self.precision_bits)

    def __eq__(self, other):
        if isinstance(other, ComplexPoint):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (MpReal, mpf, int, float)):
            return self.is_real and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ComplexPoint({self.re}, {self.im}, bits={self.precision_bits})"

    def __str__(self):
        if self.is_real:
            return str(self.re)
        sign = "+" if self.im.value >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


@dataclass(frozen=True)
class ShiftParameter:
    """The shift a of the zeta series; the standard domain is 0 < a <= 1."""

    a: MpReal

    @classmethod
    def coerce(cls, value, precision_bits: int) -> "ShiftParameter":
        if isinstance(value, ShiftParameter):
            return value
        return cls(MpReal.coerce(value, precision_bits))

    def require_standard(self) -> MpReal:
        """Validate 0 < a <= 1."""
        if not (self.a.value > 0 and self.a.value <= 1):
            raise DomainError(f"shift must satisfy 0 < a <= 1, got {self.a}")
        return self.a

    def require_extended(self) -> MpReal:
        """Validate 0 <= a <= 1 (shifted-function paths permit a = 0)."""
        if not (self.a.value >= 0 and self.a.value <= 1):
            raise DomainError(f"shift must satisfy 0 <= a <= 1, got {self.a}")
        return self.a


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation knobs: precision, truncation, quadrature depth, tolerance.

    ``target_tol`` defaults to four digits short of the carried precision.
    ``series_stage_cap`` bounds the number of series terms actually
    computed; the cost of accurate alternating sums grows quadratically
    with the term index, so very large ``max_terms`` requests are decided
    by certified tail extrapolation instead of brute force.
    """

    precision_bits: int = 128
    max_terms: int = 100_000
    quad_levels: int = 10
    target_tol: MpReal | None = None
    series_stage_cap: int = 4096

    def __post_init__(self):
        if self.precision_bits < MIN_PRECISION_BITS:
            raise DomainError(f"precision_bits must be >= {MIN_PRECISION_BITS}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.quad_levels < 2:
            raise DomainError("quad_levels must be >= 2")
        if self.target_tol is not None and not self.target_tol.value > 0:
            raise DomainError("target_tol must be positive")

    @classmethod
    def from_digits(cls, digits: int, **overrides) -> "EvalConfig":
        return cls(precision_bits=bits_for_digits(digits), **overrides)

    @property
    def digits(self) -> int:
        return digits_for_bits(self.precision_bits)

    @property
    def work_bits(self) -> int:
        return working_bits(self.precision_bits)

    def tol(self) -> MpReal:
        if self.target_tol is not None:
            return self.target_tol
        with mp.workprec(self.work_bits):
            return MpReal._raw(mpf(10) ** (4 - self.digits), self.precision_bits)


# ----------------------------------------------------------------------
# Shared special functions
# ----------------------------------------------------------------------


def complex_pow(base: RealLike, s, precision_bits: int | None = None) -> ComplexPoint:
    """base**s = exp(s*log(base)) for positive real base and complex s."""
    if precision_bits is None:
        precision_bits = _infer_bits(base, s)
    base = MpReal.coerce(base, precision_bits)
    s = ComplexPoint.coerce(s, precision_bits)
    if not base.value > 0:
        raise DomainError(f"complex_pow requires base > 0, got {base}")
    bits = max(base.precision_bits, s.precision_bits)
    with mp.workprec(bits + 8):
        r = mpmath.exp(s.to_mpc() * mpmath.log(base.value))
    with mp.workprec(bits):
        return ComplexPoint._raw(r, bits)


def _infer_bits(*values) -> int:
    bits = [v.precision_bits for v in values if isinstance(v, (MpReal, ComplexPoint))]
    return max(bits) if bits else mp.prec


def gamma(s, precision_bits: int | None = None):
    """Gamma function; raises PoleError at the non-positive integers.

    Returns ``MpReal`` for real input and ``ComplexPoint`` otherwise.
    Backed by a precision-adaptive shifted-series scheme, so accuracy
    scales with the requested precision instead of capping out.
    """
    if precision_bits is None:
        precision_bits = _infer_bits(s)
    s = ComplexPoint.coerce(s, precision_bits)
    bits = s.precision_bits
    if s.is_real and s.re.value <= 0 and mpmath.isint(s.re.value):
        raise PoleError(f"gamma pole at s = {s.re}")
    with mp.workprec(bits + 16):
        try:
            g = mpmath.gamma(s.re.value if s.is_real else s.to_mpc())
        except ValueError as exc:
            raise PoleError(f"gamma pole at s = {s}") from exc
    with mp.workprec(bits):
        if s.is_real:
            return MpReal._raw(g, bits)
        return ComplexPoint._raw(g, bits)


def digamma(x: RealLike, precision_bits: int | None = None) -> MpReal:
    """Digamma psi(x) for x > 0 at the carried precision."""
    if precision_bits is None:
        precision_bits = _infer_bits(x)
    x = MpReal.coerce(x, precision_bits)
    if not x.value > 0:
        raise DomainError(f"digamma requires x > 0, got {x}")
    bits = x.precision_bits
    with mp.workprec(bits + 16):
        d = mpmath.digamma(x.value)
    with mp.workprec(bits):
        return MpReal._raw(d, bits)


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """Exact Bernoulli number B_m (convention B_1 = -1/2)."""
    if m < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(-1, 2)
    if m % 2 == 1:
        return Fraction(0)
    # sum_{k=0}^{m} C(m+1,k) B_k = 0  for m >= 1
    acc = Fraction(0)
    for k in range(m):
        bk = bernoulli_number(k)
        if bk:
            acc += comb(m + 1, k) * bk
    return -acc / (m + 1)


@lru_cache(maxsize=512)
def bernoulli_poly_coeffs(m: int) -> tuple[Fraction, ...]:
    """Coefficients of B_m(x) from highest to lowest degree, exact."""
    if m < 0:
        raise DomainError("Bernoulli degree must be >= 0")
    return tuple(
        comb(m, k) * bernoulli_number(k) for k in range(m + 1)
    )  # coefficient of x^(m-k)


def bernoulli_poly(m: int, x):
    """Degree-m Bernoulli polynomial at x, exact rational coefficients.

    Returns a ``Fraction`` when x is one, otherwise an ``MpReal`` at the
    input's precision (with a few guard bits against coefficient growth).
    """
    coeffs = bernoulli_poly_coeffs(m)
    if isinstance(x, (Fraction, int)):
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * x + c
        return acc
    bits = _infer_bits(x)
    x = MpReal.coerce(x, bits)
    with mp.workprec(bits + 64):
        acc = mpf(0)
        xv = x.value
        for c in coeffs:
            acc = acc * xv + mpf(c.numerator) / c.denominator
    with mp.workprec(bits):
        return MpReal._raw(acc, bits)

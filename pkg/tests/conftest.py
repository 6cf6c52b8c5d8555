"""Shared fixtures and comparison helpers."""

from __future__ import annotations

import mpmath
import pytest
from mpmath import mp, mpf

from hzeta import ComplexPoint, EvalConfig, MpReal

COMPARE_BITS = 700  # plenty above every config used in the tests


def as_mpc(value):
    """Unwrap library values (or pass raw mpf/mpc through) at full precision."""
    if isinstance(value, ComplexPoint):
        return value.to_mpc()
    if isinstance(value, MpReal):
        return mpmath.mpc(value.value)
    return mpmath.mpc(value)


def diff(x, y) -> mpf:
    """|x - y| computed at comparison precision."""
    with mp.workprec(COMPARE_BITS):
        return abs(as_mpc(x) - as_mpc(y))


def rel_diff(x, y) -> mpf:
    with mp.workprec(COMPARE_BITS):
        xx, yy = as_mpc(x), as_mpc(y)
        scale = max(abs(xx), abs(yy), mpf(1) / 10**9)
        return abs(xx - yy) / scale


def tol(exp10: int) -> mpf:
    with mp.workprec(COMPARE_BITS):
        return mpf(10) ** exp10


@pytest.fixture(scope="session")
def cfg30() -> EvalConfig:
    return EvalConfig.from_digits(30)


@pytest.fixture(scope="session")
def cfg40() -> EvalConfig:
    return EvalConfig.from_digits(40)


@pytest.fixture(scope="session")
def cfg20() -> EvalConfig:
    return EvalConfig.from_digits(20)

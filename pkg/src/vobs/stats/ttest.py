"""One-sample and paired t-tests on top of a regularized incomplete beta."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .rank import TAILS, StatsError, TestResult

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 1000


def _beta_cf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def _stirling_corr(x: float) -> float:
    # lgamma(x) - [(x - 0.5) ln x - x + 0.5 ln(2 pi)], valid for x >= 30
    x2 = x * x
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x


def _log_beta(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    if a < 30.0:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    # lgamma(a + b) - lgamma(a) without cancellation for large a
    ratio = ((a - 0.5) * math.log1p(b / a) + b * math.log(a + b) - b
             + _stirling_corr(a + b) - _stirling_corr(a))
    return math.lgamma(b) - ratio


def _log(x: float, xc: float) -> float:
    return math.log1p(-xc) if x > 0.5 else math.log(x)


def betainc(a: float, b: float, x: float, xc: float | None = None) -> float:
    """Regularized incomplete beta ``I_x(a, b)``.

    ``xc`` may carry ``1 - x`` computed without cancellation.
    """
    if xc is None:
        xc = 1.0 - x
    if x <= 0.0:
        return 0.0
    if xc <= 0.0:
        return 1.0
    log_front = a * _log(x, xc) + b * _log(xc, x) - _log_beta(a, b)
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, xc) / b


def t_sf(t: float, df: float) -> float:
    """Upper tail ``P(T > t)`` of Student's t with ``df`` degrees of freedom."""
    t2 = t * t
    half = 0.5 * betainc(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2))
    return half if t >= 0 else 1.0 - half


def _p_from_t(t: float, df: int, tail: str) -> float:
    if tail == "two_sided":
        t2 = t * t
        return min(1.0, betainc(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2)))
    if tail == "greater":
        return t_sf(t, df)
    return t_sf(-t, df)


def t_test(x: Sequence, mu0=0, tail: str = "two_sided") -> TestResult:
    """One-sample t-test of ``mean(x) == mu0``."""
    if tail not in TAILS:
        raise ValueError(f"tail must be one of {TAILS}")
    n = len(x)
    if n < 2:
        raise StatsError("DegenerateSample", "need at least two observations")
    values = [Fraction(v) for v in x]
    mean = sum(values, Fraction(0)) / n
    var = sum(((v - mean) ** 2 for v in values), Fraction(0)) / (n - 1)
    if var == 0:
        raise StatsError("DegenerateSample", "sample has zero variance")
    t = float(mean - Fraction(mu0)) / math.sqrt(var / n)
    return TestResult("t_one_sample", t, _p_from_t(t, n - 1, tail), tail, n,
                      mode="approximate", df=n - 1)


def t_test_paired(x: Sequence, y: Sequence, tail: str = "two_sided") -> TestResult:
    """Paired t-test on ``x - y``."""
    if len(x) != len(y):
        raise ValueError("paired samples must have equal length")
    result = t_test([Fraction(a) - Fraction(b) for a, b in zip(x, y)], 0, tail)
    return TestResult("t_paired", result.statistic, result.p_value, tail, result.n,
                      mode="approximate", df=result.df)

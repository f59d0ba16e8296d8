"""Summary statistics, empirical CDFs and first-order stochastic dominance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rank import StatsError


@dataclass(frozen=True)
class Summary:
    n: int
    mean: Fraction
    median: Fraction
    sd: float
    sd_defined: bool = True


def summarize(values: Sequence) -> Summary:
    """Exact mean and median; sample standard deviation with ``n - 1``.

    A single observation reports ``sd = 0`` with ``sd_defined = False``.
    """
    xs = sorted(Fraction(v) for v in values)
    n = len(xs)
    if n == 0:
        raise StatsError("EmptySelection", "no observations selected")
    mean = sum(xs, Fraction(0)) / n
    mid = n // 2
    median = xs[mid] if n % 2 else (xs[mid - 1] + xs[mid]) / 2
    if n < 2:
        return Summary(n, mean, median, 0.0, sd_defined=False)
    var = sum(((x - mean) ** 2 for x in xs), Fraction(0)) / (n - 1)
    return Summary(n, mean, median, math.sqrt(var))


def ecdf(sample: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Step points ``(value, F(value))`` at each distinct value, ascending."""
    xs = sorted(Fraction(v) for v in sample)
    if not xs:
        raise StatsError("EmptySample", "ecdf of an empty sample")
    n = len(xs)
    out = []
    for i, x in enumerate(xs):
        if i + 1 < n and xs[i + 1] == x:
            continue
        out.append((x, Fraction(i + 1, n)))
    return out


def ecdf_at(points: Sequence[tuple[Fraction, Fraction]], x) -> Fraction:
    """Evaluate a right-continuous step ECDF at ``x``."""
    value = Fraction(0)
    for v, f in points:
        if v <= x:
            value = f
        else:
            break
    return value


def fosd(a: Sequence, b: Sequence) -> bool:
    """True if sample ``a`` first-order stochastically dominates sample ``b``.

    ``F_a <= F_b`` at every jump point of either ECDF, strictly at one.
    """
    fa, fb = ecdf(a), ecdf(b)
    grid = sorted({v for v, _ in fa} | {v for v, _ in fb})
    pairs = [(ecdf_at(fa, x), ecdf_at(fb, x)) for x in grid]
    return all(pa <= pb for pa, pb in pairs) and any(pa < pb for pa, pb in pairs)

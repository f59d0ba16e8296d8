"""Wilcoxon rank-sum and signed-rank tests with exact small-sample p-values."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Sequence

from . import kernels

EXACT_RANK_SUM_LIMIT = 10 ** 6
EXACT_SIGNED_RANK_MAX_N = 20
TAILS = ("two_sided", "greater", "less")


class StatsError(ValueError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


@dataclass(frozen=True)
class TestResult:
    """Outcome of a hypothesis test.

    In exact mode ``p_value == count / total`` where both are integer
    counts of enumerated assignments (or sign patterns).
    """

    __test__ = False  # not a pytest class

    method: str
    statistic: float
    p_value: float
    tail: str
    n: int
    m: int | None = None
    mode: str = "exact"
    count: int | None = None
    total: int | None = None
    zeros_dropped: int = 0
    df: int | None = None

    @property
    def p_exact(self) -> Fraction | None:
        if self.count is None or self.total is None:
            return None
        return Fraction(self.count, self.total)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _check_tail(tail: str) -> None:
    if tail not in TAILS:
        raise ValueError(f"tail must be one of {TAILS}")


def doubled_midranks(values: Sequence) -> list[int]:
    """Twice the average rank of each value (ranks start at 1), so ties stay integral."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    out = [0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        # positions i..j share ranks i+1..j+1, doubled average = i+j+2
        for k in range(i, j + 1):
            out[order[k]] = i + j + 2
        i = j + 1
    return out


def tie_sizes(values: Sequence) -> list[int]:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return [c for c in counts.values() if c > 1]


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _approx_p(stat: float, mean: float, var: float, tail: str) -> float:
    if var <= 0:
        return 1.0
    sd = math.sqrt(var)
    if tail == "two_sided":
        z = max(abs(stat - mean) - 0.5, 0.0) / sd
        return min(1.0, 2.0 * _normal_sf(z))
    if tail == "greater":
        return _normal_sf((stat - mean - 0.5) / sd)
    return _normal_sf(-(stat - mean + 0.5) / sd)


def _tail_count(counts: Sequence[int], observed: int, doubled_center: int, tail: str) -> int:
    # counts[s]: assignments whose doubled statistic equals s;
    # doubled_center is twice the null mean of s
    if tail == "greater":
        return sum(counts[observed:])
    if tail == "less":
        return sum(counts[:observed + 1])
    dev = abs(2 * observed - doubled_center)
    return sum(c for s, c in enumerate(counts) if c and abs(2 * s - doubled_center) >= dev)


def rank_sum(x: Sequence, y: Sequence, tail: str = "two_sided", mode: str = "auto") -> TestResult:
    """Wilcoxon rank-sum test; the statistic is the rank sum of ``x``.

    ``tail="greater"`` asks whether ``x`` tends to be larger than ``y``.
    ``mode="auto"`` enumerates all group assignments when there are at most
    a million of them and otherwise uses the tie-corrected normal
    approximation with continuity correction.
    """
    _check_tail(tail)
    n, m = len(x), len(y)
    if n == 0 or m == 0:
        raise StatsError("EmptySample", "both samples must be non-empty")
    pooled = list(x) + list(y)
    big = n + m
    ranks = doubled_midranks(pooled)
    observed = sum(ranks[:n])
    statistic = observed / 2
    if mode == "auto":
        mode = "exact" if math.comb(big, n) <= EXACT_RANK_SUM_LIMIT else "approximate"
    if mode == "exact":
        counts = kernels.rank_sum_counts(ranks, n)
        total = math.comb(big, n)
        # doubled statistic has mean n(N+1); _tail_count compares 2s with twice that
        count = _tail_count(counts, observed, 2 * n * (big + 1), tail)
        return TestResult("rank_sum", statistic, count / total, tail, n, m, "exact",
                          count, total)
    if mode != "approximate":
        raise ValueError("mode must be 'auto', 'exact' or 'approximate'")
    mean = n * (big + 1) / 2
    ties = sum(t ** 3 - t for t in tie_sizes(pooled))
    var = n * m / 12 * ((big + 1) - ties / (big * (big - 1))) if big > 1 else 0.0
    return TestResult("rank_sum", statistic, _approx_p(statistic, mean, var, tail), tail,
                      n, m, "approximate")


def signed_rank(diffs: Sequence, tail: str = "two_sided", mode: str = "auto") -> TestResult:
    """Wilcoxon signed-rank test on paired differences.

    Zero differences are dropped first (their number is reported). The
    statistic is the rank sum of the positive differences, ranks taken on
    absolute values with midranks for ties.
    """
    _check_tail(tail)
    nonzero = [d for d in diffs if d != 0]
    zeros = len(diffs) - len(nonzero)
    n = len(nonzero)
    if n == 0:
        if zeros:
            raise StatsError("AllZeroDifferences", "every difference is zero")
        raise StatsError("EmptySample", "no differences given")
    mags = [abs(d) for d in nonzero]
    ranks = doubled_midranks(mags)
    observed = sum(r for r, d in zip(ranks, nonzero) if d > 0)
    top = sum(ranks)
    statistic = observed / 2
    if mode == "auto":
        mode = "exact" if n <= EXACT_SIGNED_RANK_MAX_N else "approximate"
    if mode == "exact":
        counts = kernels.signed_rank_counts(ranks)
        total = 2 ** n
        count = _tail_count(counts, observed, top, tail)
        return TestResult("signed_rank", statistic, count / total, tail, n, None, "exact",
                          count, total, zeros)
    if mode != "approximate":
        raise ValueError("mode must be 'auto', 'exact' or 'approximate'")
    mean = n * (n + 1) / 4
    var = n * (n + 1) * (2 * n + 1) / 24 - sum(t ** 3 - t for t in tie_sizes(mags)) / 48
    return TestResult("signed_rank", statistic, _approx_p(statistic, mean, var, tail), tail,
                      n, None, "approximate", zeros_dropped=zeros)

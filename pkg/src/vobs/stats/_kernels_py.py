"""Pure-Python fallback for the compiled kernels.

Counts are built by dynamic programming over positions rather than by
listing assignments; the resulting integer counts are identical.
"""

from __future__ import annotations

from typing import Sequence


def rank_sum_counts(doubled_ranks: Sequence[int], n: int) -> list[int]:
    total = len(doubled_ranks)
    if n < 0 or n > total:
        raise ValueError("subset size out of range")
    top = sum(doubled_ranks)
    # table[k][s]: subsets of size k with doubled-rank sum s
    table = [[0] * (top + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for r in doubled_ranks:
        for k in range(n, 0, -1):
            src, dst = table[k - 1], table[k]
            for s in range(top - r, -1, -1):
                if src[s]:
                    dst[s + r] += src[s]
    return table[n]


def signed_rank_counts(doubled_ranks: Sequence[int]) -> list[int]:
    top = sum(doubled_ranks)
    counts = [0] * (top + 1)
    counts[0] = 1
    for r in doubled_ranks:
        for s in range(top - r, -1, -1):
            if counts[s]:
                counts[s + r] += counts[s]
    return counts

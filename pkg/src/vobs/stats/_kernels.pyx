# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration of rank-statistic null distributions.

Ranks arrive doubled so that midranks stay integral.
"""

from libc.stdlib cimport malloc, free


def rank_sum_counts(doubled_ranks, Py_ssize_t n):
    """Count every ``n``-subset of positions by the sum of its doubled ranks."""
    cdef Py_ssize_t total = len(doubled_ranks)
    cdef Py_ssize_t i, k
    cdef long long s, top = 0
    if n < 0 or n > total:
        raise ValueError("subset size out of range")
    cdef long long *r = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(max(n, 1) * sizeof(Py_ssize_t))
    if r == NULL or idx == NULL:
        free(r)
        free(idx)
        raise MemoryError()
    for i in range(total):
        r[i] = doubled_ranks[i]
        top += r[i]
    cdef long long *counts = <long long *> malloc((top + 1) * sizeof(long long))
    if counts == NULL:
        free(r)
        free(idx)
        raise MemoryError()
    for i in range(top + 1):
        counts[i] = 0
    try:
        s = 0
        for i in range(n):
            idx[i] = i
            s += r[i]
        while True:
            counts[s] += 1
            # advance to the next combination in lexicographic order
            k = n - 1
            while k >= 0 and idx[k] == total - n + k:
                k -= 1
            if k < 0:
                break
            s -= r[idx[k]]
            idx[k] += 1
            s += r[idx[k]]
            for i in range(k + 1, n):
                s -= r[idx[i]]
                idx[i] = idx[i - 1] + 1
                s += r[idx[i]]
        return [counts[i] for i in range(top + 1)]
    finally:
        free(r)
        free(idx)
        free(counts)


def signed_rank_counts(doubled_ranks):
    """Count all ``2**n`` sign patterns by the doubled positive-rank sum."""
    cdef Py_ssize_t n = len(doubled_ranks)
    cdef Py_ssize_t i, bit
    cdef unsigned long long step, patterns, gray, prev
    cdef long long s = 0, top = 0
    if n > 62:
        raise ValueError("too many differences to enumerate")
    cdef long long *r = <long long *> malloc(max(n, 1) * sizeof(long long))
    if r == NULL:
        raise MemoryError()
    for i in range(n):
        r[i] = doubled_ranks[i]
        top += r[i]
    cdef long long *counts = <long long *> malloc((top + 1) * sizeof(long long))
    if counts == NULL:
        free(r)
        raise MemoryError()
    for i in range(top + 1):
        counts[i] = 0
    try:
        patterns = (<unsigned long long> 1) << n
        prev = 0
        counts[0] += 1
        # Gray code walk: one sign flips per step
        for step in range(1, patterns):
            gray = step ^ (step >> 1)
            bit = 0
            while not ((gray ^ prev) >> bit) & 1:
                bit += 1
            if (gray >> bit) & 1:
                s += r[bit]
            else:
                s -= r[bit]
            counts[s] += 1
            prev = gray
        return [counts[i] for i in range(top + 1)]
    finally:
        free(r)
        free(counts)

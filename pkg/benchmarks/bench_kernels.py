"""Time the compiled and pure-Python null-distribution kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

The compiled kernels walk every assignment; the fallback counts by dynamic
programming. Both return identical count vectors, checked before timing.
"""

from __future__ import annotations

import argparse
import math
import random
import timeit

from vobs.stats import kernels
from vobs.stats.rank import doubled_midranks


def cases(rng: random.Random):
    for n, m in ((5, 5), (8, 8), (10, 10), (9, 14)):
        vals = [rng.randint(0, 12) for _ in range(n + m)]
        yield f"rank-sum n={n} m={m} ({math.comb(n + m, n):,} subsets)", \
            "rank_sum_counts", (doubled_midranks(vals), n)
    for n in (8, 12, 16, 20):
        vals = [rng.randint(1, 15) for _ in range(n)]
        yield f"signed-rank n={n} ({2 ** n:,} patterns)", "signed_rank_counts", \
            (doubled_midranks(vals),)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled kernels not built; run `python3 setup.py build_ext --inplace`")
    backends = {"compiled": kernels.compiled_backend, "python": kernels.python_backend}
    print(f"{'case':<44}{'compiled ms':>13}{'python ms':>12}{'ratio':>8}")
    for label, fn, fargs in cases(random.Random(0)):
        results = {name: getattr(mod, fn)(*fargs) for name, mod in backends.items()}
        assert results["compiled"] == results["python"], label
        ms = {name: 1000 * min(timeit.repeat(lambda f=getattr(mod, fn): f(*fargs),
                                             number=1, repeat=args.repeat))
              for name, mod in backends.items()}
        print(f"{label:<44}{ms['compiled']:>13.2f}{ms['python']:>12.2f}"
              f"{ms['python'] / ms['compiled']:>8.2f}")


if __name__ == "__main__":
    main()

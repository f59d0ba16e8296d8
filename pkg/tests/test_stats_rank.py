import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rank_sum_oracle, signed_rank_oracle
from vobs.stats import kernels
from vobs.stats.rank import StatsError, doubled_midranks, rank_sum, signed_rank

TAILS = ("two_sided", "greater", "less")


def test_doubled_midranks():
    assert doubled_midranks([3, 1, 3, 2]) == [7, 2, 7, 4]


def test_rank_sum_separated_samples():
    r = rank_sum([1, 2, 3], [4, 5, 6], "two_sided")
    assert r.mode == "exact" and r.p_exact == Fraction(1, 10) and r.p_value == 0.1
    assert (r.count, r.total) == (2, 20)


def test_rank_sum_identical_samples():
    assert rank_sum([2, 5, 5, 7], [2, 5, 5, 7], "two_sided").p_value == 1


def test_rank_sum_empty():
    with pytest.raises(StatsError):
        rank_sum([], [1, 2])


def test_signed_rank_examples():
    assert signed_rank([1, 2, 3], "greater").p_exact == Fraction(1, 8)
    assert signed_rank([-1, 1], "two_sided").p_value == 1
    r = signed_rank([0, 0, 2], "greater")
    assert r.zeros_dropped == 2 and r.n == 1 and r.p_exact == Fraction(1, 2)


def test_signed_rank_all_zero():
    with pytest.raises(StatsError) as err:
        signed_rank([0, 0, 0])
    assert err.value.code == "AllZeroDifferences"


def test_indicator_inputs():
    # 0/1 equilibrium indicators, heavily tied
    x, y = [1, 1, 1, 0, 1, 0], [0, 0, 1, 0, 0, 0]
    for tail in TAILS:
        assert rank_sum(x, y, tail).p_exact == rank_sum_oracle(x, y, tail)


def random_sample(rng, n, pool=(4, 4.5, 5, 6, 7, 7.5, 8)):
    return [Fraction(str(rng.choice(pool))) for _ in range(n)]


def test_rank_sum_matches_enumeration_oracle():
    rng = random.Random(1)
    for _ in range(60):
        n = rng.randint(1, 7)
        m = rng.randint(1, 12 - n)
        x, y = random_sample(rng, n), random_sample(rng, m)
        for tail in TAILS:
            assert rank_sum(x, y, tail, mode="exact").p_exact == rank_sum_oracle(x, y, tail)


def test_signed_rank_matches_enumeration_oracle():
    rng = random.Random(2)
    for _ in range(60):
        d = [Fraction(rng.randint(-4, 4), 2) for _ in range(rng.randint(1, 12))]
        if not any(d):
            continue
        for tail in TAILS:
            assert signed_rank(d, tail, mode="exact").p_exact == signed_rank_oracle(d, tail)


def approximation_gaps(seed, n_range=(5, 12)):
    """Worst |exact - approximate| over 50 tie-free random draws, per test."""
    rng = random.Random(seed)
    worst_rs = worst_sr = 0.0
    for _ in range(50):
        n, m = rng.randint(*n_range), rng.randint(*n_range)
        pool = rng.sample(range(1000), n + m)
        x, y = pool[:n], pool[n:]
        d = [v * rng.choice((-1, 1)) for v in rng.sample(range(1, 1000), n)]
        for tail in TAILS:
            e = rank_sum(x, y, tail, mode="exact").p_value
            worst_rs = max(worst_rs, abs(e - rank_sum(x, y, tail, mode="approximate").p_value))
            e = signed_rank(d, tail, mode="exact").p_value
            worst_sr = max(worst_sr, abs(e - signed_rank(d, tail, mode="approximate").p_value))
    return worst_rs, worst_sr


def test_rank_sum_exact_and_approximate_agree():
    assert approximation_gaps(3)[0] <= 0.02


def test_signed_rank_agreement_from_nine_pairs():
    assert approximation_gaps(3, (9, 12))[1] <= 0.02


@pytest.mark.xfail(strict=True, reason="continuity-corrected normal is off by up to 0.036 "
                                       "for 5 to 8 untied pairs")
def test_signed_rank_agreement_small_n():
    assert approximation_gaps(3)[1] <= 0.02


def test_auto_mode_switches_on_size():
    assert rank_sum(list(range(10)), list(range(5, 15))).mode == "exact"
    assert rank_sum(list(range(20)), list(range(5, 25))).mode == "approximate"
    assert signed_rank(list(range(1, 21))).mode == "exact"
    assert signed_rank(list(range(1, 22))).mode == "approximate"


samples = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


@settings(max_examples=80, deadline=None)
@given(x=samples, y=samples)
def test_tail_overlap_and_swap(x, y):
    g = rank_sum(x, y, "greater", mode="exact")
    l = rank_sum(x, y, "less", mode="exact")
    assert g.p_exact + l.p_exact >= 1
    assert rank_sum(y, x, "less", mode="exact").p_exact == g.p_exact
    assert rank_sum(y, x, "greater", mode="exact").p_exact == l.p_exact


@settings(max_examples=80, deadline=None)
@given(x=samples, y=samples, shift=st.integers(-100, 100), tail=st.sampled_from(TAILS))
def test_shift_invariance(x, y, shift, tail):
    a = rank_sum(x, y, tail)
    b = rank_sum([v + shift for v in x], [v + shift for v in y], tail)
    assert a == b


@settings(max_examples=60, deadline=None)
@given(d=st.lists(st.integers(-5, 5), min_size=1, max_size=10).filter(any),
       tail=st.sampled_from(TAILS))
def test_signed_rank_p_in_unit_interval(d, tail):
    r = signed_rank(d, tail)
    assert 0 <= r.p_value <= 1
    assert r.p_exact is not None


def test_python_and_compiled_kernels_agree():
    rng = random.Random(4)
    py = kernels.python_backend
    for _ in range(40):
        vals = [rng.randint(0, 6) for _ in range(rng.randint(2, 12))]
        ranks = doubled_midranks(vals)
        n = rng.randint(1, len(vals))
        assert kernels.rank_sum_counts(ranks, n) == py.rank_sum_counts(ranks, n)
        assert kernels.signed_rank_counts(ranks) == py.signed_rank_counts(ranks)


def test_fallback_selected_without_extension():
    code = ("import sys; sys.modules['vobs.stats._kernels'] = None\n"
            "from vobs.stats import kernels, rank\n"
            "assert kernels.BACKEND == 'python'\n"
            "print(rank.rank_sum([1, 2, 3], [4, 5, 6]).p_value)\n")
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         check=True)
    assert res.stdout.strip() == "0.1"

import math
import random
from fractions import Fraction

import pytest
import scipy.special

from oracles import t_p_oracle
from vobs.stats.rank import StatsError
from vobs.stats.ttest import betainc, t_test, t_test_paired


def test_three_point_sample():
    r = t_test([1, 2, 3], 0, "two_sided")
    assert r.statistic == pytest.approx(2 * math.sqrt(3), abs=1e-12)
    assert r.p_value == pytest.approx(0.0741799, abs=1e-7)
    assert r.df == 2


def test_mean_equal_mu0():
    r = t_test([2, 4, 9], 5, "two_sided")
    assert r.statistic == 0 and r.p_value == 1


@pytest.mark.parametrize("x", [[3], [2, 2, 2]])
def test_degenerate(x):
    with pytest.raises(StatsError) as err:
        t_test(x)
    assert err.value.code == "DegenerateSample"


def test_paired_identical_is_degenerate():
    with pytest.raises(StatsError):
        t_test_paired([1, 2, 3], [1, 2, 3])


def test_paired_is_one_sample_on_differences():
    x, y = [5, 7, 4, 8], [4, 4.5, 5, 6]
    assert t_test_paired(x, y, "less").p_value == t_test([a - b for a, b in zip(x, y)], 0, "less").p_value


def test_against_integration_oracle():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 30)
        x = [Fraction(rng.randint(0, 16), 2) for _ in range(n)]
        if len(set(x)) < 2:
            continue
        mu0 = Fraction(rng.randint(4, 12), 2)
        for tail in ("two_sided", "greater", "less"):
            t, p = t_p_oracle(x, mu0, tail)
            r = t_test(x, mu0, tail)
            assert r.statistic == pytest.approx(t, rel=1e-12)
            assert abs(r.p_value - p) <= 1e-9


def test_betainc_matches_scipy():
    rng = random.Random(10)
    worst = 0.0
    for _ in range(2000):
        a = rng.choice([0.5, 1.0, 2.5]) * rng.uniform(0.1, 2000)
        b = rng.uniform(0.1, 50)
        x = rng.random()
        worst = max(worst, abs(betainc(a, b, x) - scipy.special.betainc(a, b, x)))
    assert worst < 1e-12


def test_large_df_tail():
    x = [1 + (k % 7) * 0.25 for k in range(5000)]
    r = t_test(x, 1.74, "greater")
    t, p = t_p_oracle(x, Fraction("1.74"), "greater")
    assert abs(r.p_value - p) <= 1e-9

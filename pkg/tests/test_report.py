import json

import pytest

from oracles import rank_sum_oracle, signed_rank_oracle, t_p_oracle
from vobs.stats import ingest_csv
from vobs.stats.report import IncompleteDesign, hypothesis_report, report_json, report_text


def load(fixtures, name):
    return ingest_csv(fixtures / "data" / f"{name}.csv")


def by_id(report):
    return {h["id"]: h for h in report["hypotheses"]}


def test_timing_effect_findings(fixtures):
    rep = hypothesis_report(load(fixtures, "timing_effect"))
    assert rep["findings"] == {"td_timing_effect": True,
                               "td_effect_direction": "toward_equilibrium",
                               "trust_timing_effect": False}
    h = by_id(rep)
    assert h["H1(i)"]["status"] == "rejected"
    assert h["H1'(i)"]["observed_direction"] == "opposite"
    assert h["H2(i)"]["status"] == h["H2(ii)"]["status"] == "supported"


def test_timing_effect_p_values_match_oracles(fixtures):
    ds = load(fixtures, "timing_effect")
    tests = hypothesis_report(ds)["tests"]
    p1, p2 = ds.choices("td_seq", "p1"), ds.choices("td_seq", "p2")
    for name, tail in (("td_claims_first_vs_second", "two_sided"),
                       ("td_claims_first_lt_second", "less")):
        assert tests[name]["p_value"] == pytest.approx(float(rank_sum_oracle(p1, p2, tail)),
                                                       abs=1e-12)
    for key, game, role in (("invest", "trust_if", "investor"), ("return", "trust_if", "trustee")):
        x, y = ds.choices(game, role), ds.choices("trust_tf", role)
        oracle = float(rank_sum_oracle(x, y, "two_sided"))
        assert tests[f"trust_{key}_if_vs_tf"]["p_value"] == pytest.approx(oracle, abs=1e-12)
    d = [r.choice - ds.by_subject("td_sim")[r.subject_id].choice
         for r in ds.select("td_seq", "p1")]
    assert tests["td_delta_first_signed_rank"]["p_value"] == pytest.approx(
        float(signed_rank_oracle(d, "two_sided")), abs=1e-12)
    _, p = t_p_oracle(d, 0, "less")
    assert abs(tests["td_delta_first_t_less"]["p_value"] - p) < 1e-9


def test_extreme_split(fixtures):
    rep = hypothesis_report(load(fixtures, "extreme"))
    h = by_id(rep)
    assert h["H1(i)"]["status"] == "rejected"
    assert h["H1'(i)"]["status"] == "rejected"
    assert h["H1'(i)"]["observed_direction"] == "opposite"
    # 8 vs 8 with no overlap: the single most extreme assignment out of C(16, 8)
    assert rep["tests"]["td_claims_first_lt_second"]["p_value"] == pytest.approx(1 / 12870)


def test_identical_behaviour_keeps_nulls(fixtures):
    rep = hypothesis_report(load(fixtures, "identical"))
    h = by_id(rep)
    for hid in ("H1(i)", "H1(ii)", "H2(i)", "H2(ii)"):
        assert h[hid]["status"] == "supported"
    for name in ("td_claims_first_vs_second", "trust_invest_if_vs_tf", "trust_return_if_vs_tf",
                 "td_delta_first_t", "td_delta_second_t"):
        assert rep["tests"][name]["p_value"] == 1
    assert rep["findings"]["td_timing_effect"] is False


def test_missing_game(fixtures):
    with pytest.raises(IncompleteDesign) as err:
        hypothesis_report(load(fixtures, "missing_trust_tf"))
    assert err.value.missing == ["trust_tf"]


def test_two_sided_policy(fixtures):
    rep = hypothesis_report(load(fixtures, "timing_effect"), directional_tail=False)
    assert rep["tails"] == "two_sided"
    assert rep["tests"]["td_claims_first_gt_second"]["tail"] == "two_sided"


def test_alpha_changes_labels(fixtures):
    ds = load(fixtures, "timing_effect")
    strict = by_id(hypothesis_report(ds, alpha=1e-6))
    assert strict["H1(i)"]["status"] == "supported"


def test_rendering_deterministic(fixtures):
    ds = load(fixtures, "timing_effect")
    a, b = hypothesis_report(ds), hypothesis_report(load(fixtures, "timing_effect"))
    assert report_json(a) == report_json(b)
    assert report_text(a) == report_text(b)
    json.loads(report_json(a))

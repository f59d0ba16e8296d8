"""The timing-effect test battery and its JSON / text / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Callable

from ..catalog import TdParams
from ..rational import format_rat
from .data import GAMES, ChoiceDataset
from .deltas import compute_deltas
from .descriptive import ecdf, summarize
from .rank import StatsError, TestResult, rank_sum, signed_rank
from .ttest import t_test


class IncompleteDesign(ValueError):
    def __init__(self, missing: list[str]):
        self.missing = missing
        super().__init__(f"IncompleteDesign: dataset has no rows for {', '.join(missing)}")


def _num(x: float) -> float:
    # fixed precision keeps report bytes stable
    return float(f"{x:.12g}")


def _run(name: str, fn: Callable[[], TestResult], tests: dict, degenerate_p: float = 1.0,
         method: str = "") -> None:
    try:
        res = fn()
    except StatsError as exc:
        tests[name] = {"method": method, "p_value": degenerate_p, "note": exc.code}
        return
    entry = res.to_dict()
    entry["effect_sign"] = _effect_sign(res)
    entry["statistic"] = _num(entry["statistic"])
    entry["p_value"] = _num(entry["p_value"])
    tests[name] = entry


def _effect_sign(res: TestResult) -> int:
    # which side of its null centre the statistic fell on
    if res.method == "rank_sum":
        centre = res.n * (res.n + res.m + 1) / 2
    elif res.method == "signed_rank":
        centre = res.n * (res.n + 1) / 4
    else:
        centre = 0.0
    return (res.statistic > centre) - (res.statistic < centre)


def _t_degenerate_p(values, mu0, tail: str) -> float:
    # zero-variance sample: the mean either sits on mu0 or is off it with certainty
    if len(values) < 2:
        return 1.0
    diff = Fraction(values[0]) - Fraction(mu0)
    if diff == 0:
        return 1.0
    if tail == "two_sided":
        return 0.0
    return 0.0 if (diff > 0) == (tail == "greater") else 1.0


def _t(name, values, mu0, tail, tests):
    _run(name, lambda: t_test(values, mu0, tail), tests,
         _t_degenerate_p(values, mu0, tail), "t_one_sample")
    entry = tests[name]
    if "note" in entry and len(values) >= 2:
        diff = Fraction(values[0]) - Fraction(mu0)
        entry["effect_sign"] = (diff > 0) - (diff < 0)


def _indicator(values, target) -> list[int]:
    return [int(v == target) for v in values]


def _summary_row(label: str, values) -> dict:
    if not values:
        return {"label": label, "n": 0}
    s = summarize(values)
    return {"label": label, "n": s.n, "mean": _num(float(s.mean)),
            "median": _num(float(s.median)), "sd": _num(s.sd), "sd_defined": s.sd_defined}


def _td_summaries(ds: ChoiceDataset) -> list[dict]:
    rows = []
    panels = (("A. Pooled Data", None), ("B. Sessions where Sequential played first", "TDseqFirst"),
              ("C. Sessions where Simultaneous played first", "TDsimFirst"))
    for title, seq in panels:
        recs = [r for r in ds.records if seq is None or r.sequence == seq]
        pick = lambda g, role=None: [r.choice for r in recs
                                     if r.game == g and (role is None or r.role == role)]
        rows.append({"panel": title, "rows": [
            _summary_row("Simultaneous", pick("td_sim")),
            _summary_row("First-Mover", pick("td_seq", "p1")),
            _summary_row("Second-Mover", pick("td_seq", "p2")),
        ]})
    return rows


def _trust_summaries(ds: ChoiceDataset) -> list[dict]:
    return [
        {"panel": "Investment", "rows": [
            _summary_row("Investor-First", ds.choices("trust_if", "investor")),
            _summary_row("Trustee-First", ds.choices("trust_tf", "investor"))]},
        {"panel": "Return", "rows": [
            _summary_row("Investor-First", ds.choices("trust_if", "trustee")),
            _summary_row("Trustee-First", ds.choices("trust_tf", "trustee"))]},
    ]


def run_tests(ds: ChoiceDataset, directional_tail: bool = True) -> dict:
    """Run the battery; keys name each test."""
    nash_claim = TdParams().min_claim
    tests: dict = {}
    p1, p2 = ds.choices("td_seq", "p1"), ds.choices("td_seq", "p2")
    sim, seq = ds.choices("td_sim"), ds.choices("td_seq")

    _run("td_claims_first_vs_second", lambda: rank_sum(p1, p2, "two_sided"), tests)
    up, down = ("greater", "less") if directional_tail else ("two_sided", "two_sided")
    _run("td_claims_first_gt_second", lambda: rank_sum(p1, p2, up), tests)
    _run("td_claims_first_lt_second", lambda: rank_sum(p1, p2, down), tests)
    _run("td_claims_seq_vs_sim", lambda: rank_sum(seq, sim, "two_sided"), tests)
    _run("td_eqrate_first_vs_second",
         lambda: rank_sum(_indicator(p1, nash_claim), _indicator(p2, nash_claim), "two_sided"),
         tests)

    deltas = compute_deltas(ds, "claim")
    sim_by = ds.by_subject("td_sim")
    for role, tag in (("p1", "first"), ("p2", "second")):
        paired = [(r.choice, sim_by[r.subject_id].choice) for r in ds.select("td_seq", role)
                  if r.subject_id in sim_by]
        ind = [int(a == nash_claim) - int(b == nash_claim) for a, b in paired]
        _run(f"td_eqrate_{tag}_seq_vs_sim", lambda ind=ind: signed_rank(ind, "two_sided"),
             tests, method="signed_rank")
        d = deltas.values(role)
        _run(f"td_delta_{tag}_signed_rank", lambda d=d: signed_rank(d, "two_sided"), tests,
             method="signed_rank")
        _t(f"td_delta_{tag}_t", d, 0, "two_sided", tests)
        for tail in ("greater", "less"):
            _t(f"td_delta_{tag}_t_{tail}", d, 0, tail if directional_tail else "two_sided",
               tests)

    _t("td_sim_vs_nash_t", sim, nash_claim, "two_sided", tests)
    _t("td_seq_vs_nash_t", seq, nash_claim, "two_sided", tests)

    inv_if, inv_tf = ds.choices("trust_if", "investor"), ds.choices("trust_tf", "investor")
    ret_if, ret_tf = ds.choices("trust_if", "trustee"), ds.choices("trust_tf", "trustee")
    one = "greater" if directional_tail else "two_sided"
    _run("trust_invest_if_vs_tf", lambda: rank_sum(inv_if, inv_tf, "two_sided"), tests)
    _run("trust_invest_if_gt_tf", lambda: rank_sum(inv_if, inv_tf, one), tests)
    _run("trust_return_if_vs_tf", lambda: rank_sum(ret_if, ret_tf, "two_sided"), tests)
    _run("trust_return_if_gt_tf", lambda: rank_sum(ret_if, ret_tf, one), tests)
    _t("trust_delta_invest_t", compute_deltas(ds, "invest").values(), 0, "two_sided", tests)
    _t("trust_delta_return_t", compute_deltas(ds, "return").values(), 0, "two_sided", tests)
    return tests


HYPOTHESES = (
    ("H1(i)", "In the sequential TD, first and second movers' claims are indistinguishable.",
     "null", ("td_claims_first_vs_second",)),
    ("H1'(i)", "In the sequential TD, first movers claim more than second movers.",
     "directional", ("td_claims_first_gt_second",)),
    ("H1(ii)", "First and second movers' claims match their simultaneous-game claims.",
     "null", ("td_delta_first_t", "td_delta_second_t")),
    ("H1'(ii)", "First and second movers claim more in the sequential than the simultaneous game.",
     "directional", ("td_delta_first_t_greater", "td_delta_second_t_greater")),
    ("H2(i)", "Investment is distributed the same in investor-first and trustee-first games.",
     "null", ("trust_invest_if_vs_tf",)),
    ("H2'(i)", "Investment is higher in the investor-first game.",
     "directional", ("trust_invest_if_gt_tf",)),
    ("H2(ii)", "Return is distributed the same in investor-first and trustee-first games.",
     "null", ("trust_return_if_vs_tf",)),
    ("H2'(ii)", "Return is higher in the investor-first game.",
     "directional", ("trust_return_if_gt_tf",)),
)

# opposite-direction tests used to report which way a rejected clause went
_OPPOSITE = {
    "td_claims_first_gt_second": "td_claims_first_lt_second",
    "td_delta_first_t_greater": "td_delta_first_t_less",
    "td_delta_second_t_greater": "td_delta_second_t_less",
}


def _significant(tests: dict, name: str, alpha: float, sign: int) -> bool:
    t = tests[name]
    return t["p_value"] < alpha and t.get("effect_sign", 0) == sign


def evaluate_hypotheses(tests: dict, alpha: float) -> list[dict]:
    """Label each clause. Null clauses hold while every test has ``p >= alpha``;
    directional clauses need every test significant in the stated (upward)
    direction."""
    out = []
    for hid, statement, kind, names in HYPOTHESES:
        entry = {"id": hid, "statement": statement, "tests": list(names)}
        if kind == "null":
            ok = all(tests[n]["p_value"] >= alpha for n in names)
            entry["status"] = "supported" if ok else "rejected"
        else:
            ok = all(_significant(tests, n, alpha, +1) for n in names)
            entry["status"] = "supported" if ok else "rejected"
            opposite = [_OPPOSITE.get(n, n) for n in names]
            if ok:
                entry["observed_direction"] = "stated"
            elif any(_significant(tests, o, alpha, -1) for o in opposite):
                entry["observed_direction"] = "opposite"
            else:
                entry["observed_direction"] = "none"
        out.append(entry)
    return out


def _findings(tests: dict, hyps: list[dict], alpha: float) -> dict:
    by_id = {h["id"]: h for h in hyps}
    td_effect = by_id["H1(i)"]["status"] == "rejected" or by_id["H1(ii)"]["status"] == "rejected"
    lower = any(_significant(tests, n, alpha, -1) for n in
                ("td_claims_first_lt_second", "td_delta_first_t_less", "td_delta_second_t_less"))
    higher = any(_significant(tests, n, alpha, +1) for n in
                 ("td_claims_first_gt_second", "td_delta_first_t_greater",
                  "td_delta_second_t_greater"))
    if not td_effect:
        direction = "none"
    elif lower and higher:
        direction = "mixed"
    elif lower:
        direction = "toward_equilibrium"
    elif higher:
        direction = "away_from_equilibrium"
    else:
        direction = "undetermined"
    trust_effect = (by_id["H2(i)"]["status"] == "rejected"
                    or by_id["H2(ii)"]["status"] == "rejected")
    return {"td_timing_effect": td_effect, "td_effect_direction": direction,
            "trust_timing_effect": trust_effect}


def hypothesis_report(ds: ChoiceDataset, alpha: float = 0.05,
                      directional_tail: bool = True) -> dict:
    """Full JSON-shaped report: summaries, tests, hypothesis verdicts, findings."""
    missing = [g for g in GAMES if g not in ds.games()]
    if missing:
        raise IncompleteDesign(missing)
    tests = run_tests(ds, directional_tail)
    hyps = evaluate_hypotheses(tests, alpha)
    deltas = {k: compute_deltas(ds, k) for k in ("claim", "invest", "return")}
    return {
        "alpha": alpha,
        "tails": "directional" if directional_tail else "two_sided",
        "design": {"records": ds.row_count,
                   "subjects": len({r.subject_id for r in ds.records})},
        "summaries": {"claims": _td_summaries(ds), "trust": _trust_summaries(ds)},
        "deltas": {k: {"n": len(v.records), "excluded": v.excluded,
                       "mean": _num(float(sum(v.values(), Fraction(0)) / len(v.records)))
                       if v.records else None}
                   for k, v in deltas.items()},
        "tests": tests,
        "hypotheses": hyps,
        "findings": _findings(tests, hyps, alpha),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _fmt(x, digits=2) -> str:
    return "" if x is None else f"{x:.{digits}f}"


def report_text(report: dict) -> str:
    """Aligned plain-text tables laid out like the published summary tables."""
    lines = []

    def table(title, panels):
        lines.append(title)
        lines.append(f"{'':<28}{'Obs':>6}{'Mean':>8}{'Median':>8}{'S.D.':>8}")
        for panel in panels:
            lines.append(panel["panel"])
            for row in panel["rows"]:
                if row["n"] == 0:
                    lines.append(f"  {row['label']:<26}{0:>6}")
                    continue
                lines.append(f"  {row['label']:<26}{row['n']:>6}{_fmt(row['mean']):>8}"
                             f"{_fmt(row['median']):>8}{_fmt(row['sd']):>8}")
        lines.append("")

    table("Summary statistics of claims", report["summaries"]["claims"])
    table("Summary statistics of investment and return", report["summaries"]["trust"])

    lines.append("Tests")
    lines.append(f"{'name':<30}{'method':<14}{'tail':<11}{'mode':<13}{'n':>4}{'m':>4}"
                 f"{'stat':>10}{'p':>10}")
    for name in sorted(report["tests"]):
        t = report["tests"][name]
        stat = _fmt(t.get("statistic"), 3)
        lines.append(f"{name:<30}{t.get('method', ''):<14}{t.get('tail', ''):<11}"
                     f"{t.get('mode', t.get('note', '')):<13}{t.get('n', ''):>4}"
                     f"{t.get('m', ''):>4}{stat:>10}{t['p_value']:>10.4f}")
    lines.append("")
    lines.append(f"Hypotheses (alpha = {report['alpha']})")
    for h in report["hypotheses"]:
        extra = f" [{h['observed_direction']}]" if "observed_direction" in h else ""
        lines.append(f"  {h['id']:<9}{h['status']:<10}{h['statement']}{extra}")
    lines.append("")
    f = report["findings"]
    lines.append("Findings")
    lines.append(f"  TD timing effect: {'yes' if f['td_timing_effect'] else 'no'}"
                 f" ({f['td_effect_direction']})")
    lines.append(f"  Trust timing effect: {'yes' if f['trust_timing_effect'] else 'no'}")
    return "\n".join(lines) + "\n"


def ecdf_series(ds: ChoiceDataset) -> dict[str, list]:
    """Named ECDF series for plotting; empty selections are omitted."""
    claims = compute_deltas(ds, "claim")
    raw = {
        "td_sim": ds.choices("td_sim"),
        "td_seq_pooled": ds.choices("td_seq"),
        "td_seq_first": ds.choices("td_seq", "p1"),
        "td_seq_second": ds.choices("td_seq", "p2"),
        "delta_claim_first": claims.values("p1"),
        "delta_claim_second": claims.values("p2"),
        "invest_if": ds.choices("trust_if", "investor"),
        "invest_tf": ds.choices("trust_tf", "investor"),
        "return_if": ds.choices("trust_if", "trustee"),
        "return_tf": ds.choices("trust_tf", "trustee"),
        "delta_invest": compute_deltas(ds, "invest").values(),
        "delta_return": compute_deltas(ds, "return").values(),
    }
    return {k: ecdf(v) for k, v in raw.items() if v}


def ecdf_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "cumulative_fraction"])
    for v, f in points:
        exact = format_rat(f)
        w.writerow([format_rat(v), exact if "/" not in exact else f"{float(f):.12g}"])
    return buf.getvalue()


def deltas_csv(ds: ChoiceDataset) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["subject_id", "kind", "role", "value"])
    for kind in ("claim", "invest", "return"):
        for d in compute_deltas(ds, kind).records:
            w.writerow([d.subject_id, d.kind, d.role, format_rat(d.value)])
    return buf.getvalue()

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vobs.stats import compute_deltas, ecdf, fosd, ingest_csv, summarize
from vobs.stats.data import DatasetError
from vobs.stats.descriptive import ecdf_at

HEADER = "subject_id,session_id,sequence,game,role,choice\n"


def codes(text):
    with pytest.raises(DatasetError) as err:
        ingest_csv(HEADER + text)
    return [(e.code, e.row) for e in err.value.errors]


def test_summarize():
    s = summarize([4, 6, 8])
    assert (s.n, s.mean, s.median, s.sd) == (3, 6, 6, 2)
    one = summarize([5])
    assert one.mean == one.median == 5 and one.sd == 0 and not one.sd_defined
    assert summarize([6, 6, 6]).sd == 0
    assert summarize([1, 2, 3, 10]).median == Fraction(5, 2)
    with pytest.raises(ValueError):
        summarize([])


def test_ecdf_examples():
    assert ecdf([4, 6, 6, 8]) == [(4, Fraction(1, 4)), (6, Fraction(3, 4)), (8, 1)]
    assert ecdf([5, 5]) == [(5, 1)]
    pts = ecdf([4, 6, 6, 8])
    assert ecdf_at(pts, 3) == 0 and ecdf_at(pts, 6.5) == Fraction(3, 4)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=40))
def test_ecdf_validity(sample):
    pts = ecdf(sample)
    fr = [f for _, f in pts]
    assert all(0 < f <= 1 for f in fr)
    assert fr == sorted(fr) and fr[-1] == 1
    assert [v for v, _ in pts] == sorted(set(pts[i][0] for i in range(len(pts))))


def test_fosd():
    low, high = [4, 4, 5, 6], [6, 7, 8, 8]
    assert fosd(high, low) and not fosd(low, high)
    assert not fosd(low, low)
    assert not fosd([4, 8], [6, 6])


def test_synthetic8(fixtures):
    ds = ingest_csv(fixtures / "data" / "synthetic8.csv")
    assert ds.row_count == 8
    assert ds.choices("trust_tf", "trustee") == [3]


def test_trustee_choices_use_displayed_scale():
    bad = "s1,S1,TDseqFirst,trust_if,trustee,3\n"
    assert codes(bad) == [("ChoiceOutOfRange", 2)]


def test_row_errors():
    assert codes("s1,S1,TDseqFirst,td_seq,na,5\n") == [("RoleGameMismatch", 2)]
    dup = "s1,S1,TDseqFirst,td_sim,na,5\ns1,S1,TDseqFirst,td_sim,na,6\n"
    assert codes(dup) == [("DuplicateSubjectGame", 3)]
    assert codes("s1,S1,TDseqFirst,td_x,na,5\n") == [("UnknownGameToken", 2)]
    assert codes("s1,S1,Other,td_sim,na,5\n") == [("UnknownSequenceToken", 2)]
    assert codes("s1,S1,TDseqFirst,td_sim,na,five\n") == [("MalformedNumber", 2)]
    assert codes("s1,S1,TDseqFirst,td_sim,na,9\n") == [("ChoiceOutOfRange", 2)]


def test_all_errors_collected():
    text = "s1,S1,TDseqFirst,td_seq,na,5\ns2,S1,TDseqFirst,td_sim,na,3\n"
    assert codes(text) == [("RoleGameMismatch", 2), ("ChoiceOutOfRange", 3)]


def test_missing_column():
    with pytest.raises(DatasetError) as err:
        ingest_csv("subject_id,game,choice\ns1,td_sim,5\n")
    assert err.value.errors[0].code == "MissingColumn"


def rows(*records):
    return ingest_csv(HEADER + "".join(",".join(r) + "\n" for r in records))


def test_claim_delta_sign_and_role():
    ds = rows(("s1", "S1", "TDseqFirst", "td_seq", "p1", "5"),
              ("s1", "S1", "TDseqFirst", "td_sim", "na", "6"))
    d = compute_deltas(ds, "claim")
    assert [(r.value, r.role) for r in d.records] == [(-1, "p1")]


def test_role_switchers_excluded():
    ds = rows(("s1", "S1", "TDseqFirst", "trust_if", "investor", "2"),
              ("s1", "S1", "TDseqFirst", "trust_tf", "trustee", "4"),
              ("s2", "S1", "TDseqFirst", "trust_if", "trustee", "8"),
              ("s2", "S1", "TDseqFirst", "trust_tf", "trustee", "4"))
    inv, ret = compute_deltas(ds, "invest"), compute_deltas(ds, "return")
    assert inv.records == () and inv.excluded == 1
    assert [r.value for r in ret.records] == [-2] and ret.excluded == 1


def test_identical_choices_zero_deltas(fixtures):
    ds = ingest_csv(fixtures / "data" / "identical.csv")
    for kind in ("claim", "invest", "return"):
        assert set(compute_deltas(ds, kind).values()) == {0}

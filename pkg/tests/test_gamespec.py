import csv
import random
from fractions import Fraction

import pytest

from oracles import random_game
from vobs.catalog import BUILTINS, builtin
from vobs.gamespec import GameSpecError, load_game, parse_document, parse_game, serialize_game
from vobs.model import ActionSet, TimedGame, Timing

WEAK_PD = """\
game: weak_pd
timing: p1_first
p1_actions: C D
p2_actions: C D
payoffs:
4|4 0|4
5|0 1|1
"""


def corpus(fixtures):
    with open(fixtures / "malformed" / "expected.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def test_parse_weak_pd_document():
    g = parse_game(WEAK_PD)
    assert g.payoff_equal(builtin("weak_pd"))
    assert g.timing is Timing.P1_FIRST


def test_comments_blank_lines_and_crlf():
    text = "# header\r\n\r\n" + WEAK_PD.replace("\n", "  # note\r\n")
    assert parse_game(text) == parse_game(WEAK_PD)


def test_token_spans():
    doc = parse_document(WEAK_PD)
    assert (doc.name.line, doc.name.column) == (1, 7)
    assert doc.payoffs[1][1].token.line == 7 and doc.payoffs[1][1].token.column == 5


def test_serialize_numbers():
    ab = ActionSet(("a", "b"))
    g = TimedGame("n", ab, ab, [[Fraction(15, 2), Fraction(1, 3)], [0, -1]], [[1, 1], [1, 1]],
                  Timing.SIMULTANEOUS)
    text = serialize_game(g)
    assert "7.5|1 1/3|1" in text
    assert text.splitlines()[1] == "timing: simultaneous"


def test_td_serialization_timing_line():
    assert serialize_game(builtin("td_seq")).splitlines()[1] == "timing: p1_first"


@pytest.mark.parametrize("name", BUILTINS)
def test_round_trip_catalog(name):
    g = builtin(name)
    assert parse_game(serialize_game(g)) == g


def test_round_trip_random():
    rng = random.Random(2024)
    for k in range(100):
        g = random_game(rng, name=f"g{k}")
        assert parse_game(serialize_game(g)) == g


def test_serialize_is_canonical():
    messy = WEAK_PD.replace("C D", "C    D").replace("4|4", "4.0|4/1") + "\n\n# end\n"
    once = serialize_game(parse_game(messy))
    assert serialize_game(parse_game(once)) == once
    assert once == WEAK_PD


def test_malformed_corpus(fixtures):
    rows = corpus(fixtures)
    assert len(rows) == 10
    for row in rows:
        with pytest.raises(GameSpecError) as err:
            load_game(fixtures / "malformed" / row["file"])
        assert (err.value.code, err.value.line) == (row["code"], int(row["line"])), row["file"]


def test_three_cells_on_two_column_row():
    bad = WEAK_PD.replace("4|4 0|4", "4|4 0|4 1|1")
    with pytest.raises(GameSpecError) as err:
        parse_game(bad)
    assert err.value.code == "ArityMismatch" and err.value.line == 6


def test_too_few_rows():
    with pytest.raises(GameSpecError) as err:
        parse_game(WEAK_PD.rsplit("5|0", 1)[0])
    assert err.value.code == "MissingSection"


def test_sections_out_of_order():
    lines = WEAK_PD.splitlines()
    lines[2], lines[3] = lines[3], lines[2]
    with pytest.raises(GameSpecError) as err:
        parse_game("\n".join(lines))
    assert err.value.code == "MissingSection" and err.value.line == 3

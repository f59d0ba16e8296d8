"""The ``.game`` text format.

A document is line oriented; ``#`` starts a comment and blank lines are
ignored::

    game: weak_pd
    timing: p1_first
    p1_actions: C D
    p2_actions: C D
    payoffs:
    4|4 0|4
    5|0 1|1

Each payoff row lists one ``u1|u2`` cell per player-2 action. Numbers are
decimal literals with at most nine fraction digits, or exact ``p/q`` ratios.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .model import ActionSet, TimedGame, Timing
from .rational import NumberFormatError, format_rat, parse_rat

_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
_WORD_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_NUMBER_RE = re.compile(r"^-?\d+(?:\.\d+)?$|^-?\d+/\d+$")
_TOKEN_RE = re.compile(r"\S+")


class GameSpecError(ValueError):
    """A diagnostic pointing at a 1-based line and column."""

    def __init__(self, code: str, line: int, column: int, message: str):
        self.code = code
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {code}: {message}")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Cell:
    u1: Fraction
    u2: Fraction
    token: Token


@dataclass(frozen=True)
class GameSpecDocument:
    name: Token
    timing: Token
    p1_actions: tuple[Token, ...]
    p2_actions: tuple[Token, ...]
    payoffs: tuple[tuple[Cell, ...], ...]

    def to_game(self) -> TimedGame:
        return TimedGame(
            self.name.text,
            ActionSet(tuple(t.text for t in self.p1_actions)),
            ActionSet(tuple(t.text for t in self.p2_actions)),
            [[c.u1 for c in row] for row in self.payoffs],
            [[c.u2 for c in row] for row in self.payoffs],
            Timing(self.timing.text),
        )


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            out.append((lineno, line))
    return out


def _tokens(line: str, lineno: int, start: int) -> list[Token]:
    return [Token(m.group(), lineno, m.start() + 1)
            for m in _TOKEN_RE.finditer(line, start)]


def _header(lines, pos: int, key: str, last_line: int) -> tuple[int, str, int]:
    if pos >= len(lines):
        raise GameSpecError("MissingSection", last_line + 1, 1, f"expected '{key}:' section")
    lineno, line = lines[pos]
    m = re.match(r"^\s*([A-Za-z0-9_]+)\s*:", line)
    if not m or m.group(1) != key:
        raise GameSpecError("MissingSection", lineno, 1,
                            f"expected '{key}:' section, found {line.strip()!r}")
    return lineno, line, m.end()


def _number(text: str, lineno: int, column: int) -> Fraction:
    if not _NUMBER_RE.match(text):
        raise GameSpecError("MalformedNumber", lineno, column, f"{text!r} is not a number")
    try:
        return parse_rat(text)
    except NumberFormatError as exc:
        raise GameSpecError("MalformedNumber", lineno, column, str(exc)) from None


def _labels(tokens: list[Token], lineno: int, key: str, player: int) -> tuple[Token, ...]:
    if not tokens:
        raise GameSpecError("MissingSection", lineno, len(key) + 2,
                            f"'{key}' lists no actions")
    seen: set[str] = set()
    for tok in tokens:
        if not (_WORD_RE.match(tok.text) or _NUMBER_RE.match(tok.text)):
            raise GameSpecError("MalformedLabel", tok.line, tok.column,
                                f"{tok.text!r} is neither a number nor a bare word")
        if tok.text in seen:
            raise GameSpecError("DuplicateLabel", tok.line, tok.column,
                                f"player {player} label {tok.text!r} repeated")
        seen.add(tok.text)
    return tuple(tokens)


def _cell(tok: Token) -> Cell:
    parts = tok.text.split("|")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise GameSpecError("MalformedCell", tok.line, tok.column,
                            f"{tok.text!r} is not of the form u1|u2")
    u1 = _number(parts[0], tok.line, tok.column)
    u2 = _number(parts[1], tok.line, tok.column + len(parts[0]) + 1)
    return Cell(u1, u2, tok)


def parse_document(text: str) -> GameSpecDocument:
    """Parse ``.game`` text, raising :class:`GameSpecError` at the first problem."""
    lines = _content_lines(text)
    last = len(text.splitlines())
    lineno, line, start = _header(lines, 0, "game", last)
    name = _tokens(line, lineno, start)
    if len(name) != 1 or not _IDENT_RE.match(name[0].text):
        col = name[0].column if name else start + 1
        raise GameSpecError("MalformedName", lineno, col, "game name must be one identifier")

    lineno, line, start = _header(lines, 1, "timing", last)
    timing = _tokens(line, lineno, start)
    if len(timing) != 1 or timing[0].text not in {t.value for t in Timing}:
        col = timing[0].column if timing else start + 1
        got = " ".join(t.text for t in timing)
        raise GameSpecError("UnknownTiming", lineno, col,
                            f"{got!r} is not simultaneous, p1_first or p2_first")

    lineno, line, start = _header(lines, 2, "p1_actions", last)
    p1 = _labels(_tokens(line, lineno, start), lineno, "p1_actions", 1)
    lineno, line, start = _header(lines, 3, "p2_actions", last)
    p2 = _labels(_tokens(line, lineno, start), lineno, "p2_actions", 2)

    lineno, line, start = _header(lines, 4, "payoffs", last)
    if line[start:].strip():
        tok = _tokens(line, lineno, start)[0]
        raise GameSpecError("MalformedCell", lineno, tok.column,
                            "payoff rows start on the line after 'payoffs:'")
    rows = []
    for lineno, line in lines[5:]:
        cells = _tokens(line, lineno, 0)
        if len(rows) == len(p1):
            raise GameSpecError("ArityMismatch", lineno, cells[0].column,
                                f"more than {len(p1)} payoff rows")
        if len(cells) != len(p2):
            col = cells[len(p2)].column if len(cells) > len(p2) else len(line) + 1
            raise GameSpecError("ArityMismatch", lineno, col,
                                f"expected {len(p2)} cells, found {len(cells)}")
        rows.append(tuple(_cell(tok) for tok in cells))
    if len(rows) < len(p1):
        raise GameSpecError("MissingSection", last + 1, 1,
                            f"expected {len(p1)} payoff rows, found {len(rows)}")
    return GameSpecDocument(name[0], timing[0], p1, p2, tuple(rows))


def parse_game(text: str) -> TimedGame:
    return parse_document(text).to_game()


def serialize_game(game: TimedGame) -> str:
    """Canonical text; ``parse_game(serialize_game(g)) == g``."""
    out = [
        f"game: {game.name}",
        f"timing: {game.timing.value}",
        "p1_actions: " + " ".join(game.a1.labels),
        "p2_actions: " + " ".join(game.a2.labels),
        "payoffs:",
    ]
    for r1, r2 in zip(game.u1, game.u2):
        out.append(" ".join(f"{format_rat(x)}|{format_rat(y)}" for x, y in zip(r1, r2)))
    return "\n".join(out) + "\n"


def load_game(path) -> TimedGame:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_game(fh.read())

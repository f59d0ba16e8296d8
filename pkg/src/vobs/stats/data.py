"""Experiment choice datasets: CSV ingestion and validation."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..catalog import TdParams, TrustParams, display_return, parse_displayed_return
from ..rational import NumberFormatError, parse_rat

COLUMNS = ("subject_id", "session_id", "sequence", "game", "role", "choice")
GAMES = ("td_sim", "td_seq", "trust_if", "trust_tf")
SEQUENCES = ("TDseqFirst", "TDsimFirst")
ROLES_BY_GAME = {
    "td_sim": ("na",),
    "td_seq": ("p1", "p2"),
    "trust_if": ("investor", "trustee"),
    "trust_tf": ("investor", "trustee"),
}


def allowed_choices(game: str, role: str) -> frozenset[Fraction]:
    """Choice values a record may carry.

    Trustee returns are written as displayed to subjects (the doubled
    scale); ingestion converts them back to return levels.
    """
    if game.startswith("td"):
        return frozenset(TdParams().claims())
    p = TrustParams()
    if role == "trustee":
        return frozenset(display_return(p, r) for r in p.return_levels)
    return frozenset(p.invest_levels)


@dataclass(frozen=True)
class ChoiceRecord:
    """One subject's choice in one game; trustee choices are return levels."""

    subject_id: str
    session_id: str
    sequence: str
    game: str
    role: str
    choice: Fraction


@dataclass(frozen=True)
class RowError:
    code: str
    row: int
    message: str

    def __str__(self) -> str:
        return f"row {self.row}: {self.code}: {self.message}"


class DatasetError(ValueError):
    def __init__(self, errors: Iterable[RowError]):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


@dataclass(frozen=True)
class ChoiceDataset:
    records: tuple[ChoiceRecord, ...]
    source: str = "<memory>"

    @property
    def row_count(self) -> int:
        return len(self.records)

    def select(self, game: str, role: str | None = None) -> list[ChoiceRecord]:
        return [r for r in self.records if r.game == game and (role is None or r.role == role)]

    def choices(self, game: str, role: str | None = None) -> list[Fraction]:
        return [r.choice for r in self.select(game, role)]

    def by_subject(self, game: str) -> dict[str, ChoiceRecord]:
        return {r.subject_id: r for r in self.select(game)}

    def games(self) -> set[str]:
        return {r.game for r in self.records}


def _read_text(source) -> tuple[str, str]:
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, encoding="utf-8", newline="") as fh:
            return fh.read(), os.fspath(source)
    if hasattr(source, "read"):
        return source.read(), getattr(source, "name", "<stream>")
    return str(source), "<text>"


def ingest_csv(source) -> ChoiceDataset:
    """Read and validate a choice CSV (path, file object or CSV text).

    Every problem is collected with its 1-based file row (the header is row
    1) and raised together as :class:`DatasetError`.
    """
    text, name = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise DatasetError([RowError("MissingColumn", 1, "empty file")])
    header = [h.strip() for h in header]
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise DatasetError([RowError("MissingColumn", 1, ", ".join(missing))])
    col = {c: header.index(c) for c in COLUMNS}

    errors: list[RowError] = []
    records: list[ChoiceRecord] = []
    seen: dict[tuple[str, str], int] = {}
    for rowno, row in enumerate(reader, start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            errors.append(RowError("MissingColumn", rowno, "row has too few fields"))
            continue
        f = {c: row[col[c]].strip() for c in COLUMNS}
        if f["game"] not in GAMES:
            errors.append(RowError("UnknownGameToken", rowno, repr(f["game"])))
            continue
        if f["sequence"] not in SEQUENCES:
            errors.append(RowError("UnknownSequenceToken", rowno, repr(f["sequence"])))
            continue
        if f["role"] not in ROLES_BY_GAME[f["game"]]:
            errors.append(RowError("RoleGameMismatch", rowno,
                                   f"role {f['role']!r} not valid for {f['game']}"))
            continue
        key = (f["subject_id"], f["game"])
        if key in seen:
            errors.append(RowError("DuplicateSubjectGame", rowno,
                                   f"{key[0]}/{key[1]} already on row {seen[key]}"))
            continue
        seen[key] = rowno
        try:
            choice = parse_rat(f["choice"])
        except NumberFormatError as exc:
            errors.append(RowError("MalformedNumber", rowno, str(exc)))
            continue
        if choice not in allowed_choices(f["game"], f["role"]):
            errors.append(RowError("ChoiceOutOfRange", rowno,
                                   f"{f['choice']} not allowed for {f['game']}/{f['role']}"))
            continue
        if f["role"] == "trustee":
            choice = parse_displayed_return(TrustParams(), choice)
        records.append(ChoiceRecord(f["subject_id"], f["session_id"], f["sequence"],
                                    f["game"], f["role"], choice))
    if errors:
        raise DatasetError(errors)
    return ChoiceDataset(tuple(records), name)

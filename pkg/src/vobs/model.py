"""Two-player games with sequential timing and unobservable actions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rational import format_rat, is_number_literal, parse_rat

PayoffTable = tuple[tuple[Fraction, ...], ...]


class Timing(enum.Enum):
    SIMULTANEOUS = "simultaneous"
    P1_FIRST = "p1_first"
    P2_FIRST = "p2_first"


class GameValidationError(ValueError):
    """Raised by operations that require a valid game."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    code: str
    player: int
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.code}(player={self.player})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass(frozen=True)
class ActionSet:
    """Ordered action labels with attached numeric values.

    Solvers identify actions by index; ``values`` are metadata used by the
    generators and the stats joins. When not given, a numeric label is its
    own value and a bare word gets its position.
    """

    labels: tuple[str, ...]
    values: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.values:
            object.__setattr__(self, "values", default_values(self.labels))
        else:
            object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @classmethod
    def from_values(cls, values: Sequence[Fraction]) -> ActionSet:
        values = [Fraction(v) for v in values]
        return cls(tuple(format_rat(v) for v in values), tuple(values))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def index_of_value(self, value: Fraction) -> int:
        return self.values.index(Fraction(value))


def default_values(labels: Sequence[str]) -> tuple[Fraction, ...]:
    return tuple(
        parse_rat(lab) if is_number_literal(lab) else Fraction(i)
        for i, lab in enumerate(labels))


@dataclass(frozen=True)
class TimedGame:
    """Payoff tables are indexed ``[a1_index][a2_index]``.

    Actions are never observed before the game ends; ``timing`` only records
    who moves first.
    """

    name: str
    a1: ActionSet
    a2: ActionSet
    u1: PayoffTable
    u2: PayoffTable
    timing: Timing = Timing.SIMULTANEOUS
    metadata: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "u1", _freeze(self.u1))
        object.__setattr__(self, "u2", _freeze(self.u2))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.a1), len(self.a2)

    def payoff(self, player: int, i: int, j: int) -> Fraction:
        return (self.u1 if player == 1 else self.u2)[i][j]

    def payoffs(self, i: int, j: int) -> tuple[Fraction, Fraction]:
        return self.u1[i][j], self.u2[i][j]

    def with_timing(self, timing: Timing) -> TimedGame:
        return TimedGame(self.name, self.a1, self.a2, self.u1, self.u2, timing,
                         self.metadata)

    def payoff_equal(self, other: TimedGame) -> bool:
        return (self.a1.labels == other.a1.labels and self.a2.labels == other.a2.labels
                and self.u1 == other.u1 and self.u2 == other.u2)


def _freeze(table) -> PayoffTable:
    return tuple(tuple(Fraction(x) for x in row) for row in table)


def validate(game: TimedGame) -> list[Violation]:
    """Return every invariant violation; an empty list means the game is valid."""
    out: list[Violation] = []
    for player, actions in ((1, game.a1), (2, game.a2)):
        if len(actions.labels) == 0:
            out.append(Violation("EmptyActionSet", player))
        if len(set(actions.labels)) != len(actions.labels):
            dupes = sorted({x for x in actions.labels if actions.labels.count(x) > 1})
            out.append(Violation("DuplicateLabel", player, ", ".join(dupes)))
        if len(actions.values) != len(actions.labels):
            out.append(Violation("LabelValueMismatch", player))
    rows, cols = game.shape
    for player, table in ((1, game.u1), (2, game.u2)):
        if len(table) != rows or any(len(r) != cols for r in table):
            got = f"{len(table)}x{'/'.join(str(len(r)) for r in table) or 0}"
            out.append(Violation("RaggedPayoffs", player, f"expected {rows}x{cols}, got {got}"))
    if not isinstance(game.timing, Timing):
        out.append(Violation("MissingTiming", 0))
    return out


def require_valid(game: TimedGame) -> None:
    violations = validate(game)
    if violations:
        raise GameValidationError(violations)


def transpose(game: TimedGame) -> TimedGame:
    """Swap player roles: the new player 1 is the old player 2."""
    rows, cols = game.shape
    u1 = [[game.u2[i][j] for i in range(rows)] for j in range(cols)]
    u2 = [[game.u1[i][j] for i in range(rows)] for j in range(cols)]
    timing = {Timing.P1_FIRST: Timing.P2_FIRST,
              Timing.P2_FIRST: Timing.P1_FIRST}.get(game.timing, game.timing)
    return TimedGame(game.name, game.a2, game.a1, u1, u2, timing, game.metadata)


@dataclass(frozen=True)
class NormalizedGame:
    """A game whose first mover (if any) is player 1.

    ``swapped`` records whether roles were exchanged; :meth:`to_original`
    maps a normalized ``(first, second)`` profile back to ``(a1, a2)``
    indices of the source game.
    """

    game: TimedGame
    swapped: bool

    def to_original(self, i: int, j: int) -> tuple[int, int]:
        return (j, i) if self.swapped else (i, j)

    def original(self) -> TimedGame:
        return transpose(self.game) if self.swapped else self.game


def normalize_roles(game: TimedGame | NormalizedGame) -> NormalizedGame:
    if isinstance(game, NormalizedGame):
        return game
    require_valid(game)
    if game.timing is Timing.P2_FIRST:
        return NormalizedGame(transpose(game), swapped=True)
    return NormalizedGame(game, swapped=False)


def affine_transform(game: TimedGame, player: int, scale, shift) -> TimedGame:
    """Map one player's payoffs through ``x -> scale * x + shift`` (``scale > 0``)."""
    scale, shift = Fraction(scale), Fraction(shift)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if player not in (1, 2):
        raise ValueError("player must be 1 or 2")
    mapped = [[scale * x + shift for x in row]
              for row in (game.u1 if player == 1 else game.u2)]
    u1 = mapped if player == 1 else game.u1
    u2 = mapped if player == 2 else game.u2
    return TimedGame(game.name, game.a1, game.a2, u1, u2, game.timing, game.metadata)

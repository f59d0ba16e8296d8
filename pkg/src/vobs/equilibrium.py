"""Solution concepts for timed two-player games.

Everything here works on pure strategies in exact arithmetic. Best
responses are always sets; where a solver needs a single second-mover
reply per first-mover action it enumerates every pure selection instead of
breaking ties.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .model import NormalizedGame, TimedGame, Timing, normalize_roles, require_valid


class SolverError(ValueError):
    """Raised when a solver is called on a game it does not apply to."""


class InvariantViolation(RuntimeError):
    """An emitted result failed its own post-condition check."""


@dataclass(frozen=True, order=True)
class Profile:
    a1_index: int
    a2_index: int

    def labels(self, game: TimedGame) -> tuple[str, str]:
        return game.a1.labels[self.a1_index], game.a2.labels[self.a2_index]


@dataclass(frozen=True)
class Belief:
    """Probability weights over player 1's actions, summing exactly to one."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        weights = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if any(w < 0 for w in weights):
            raise ValueError("belief weights must be non-negative")
        if sum(weights) != 1:
            raise ValueError(f"belief weights sum to {sum(weights)}, not 1")

    @classmethod
    def point_mass(cls, size: int, index: int) -> Belief:
        return cls(tuple(Fraction(int(i == index)) for i in range(size)))

    @classmethod
    def uniform_over(cls, size: int, support: Sequence[int]) -> Belief:
        w = Fraction(1, len(support))
        return cls(tuple(w if i in support else Fraction(0) for i in range(size)))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)


@dataclass(frozen=True)
class VirtualConjecture:
    """The first mover's model of the second mover as if actions were observed.

    ``br_map[i]`` is the set of second-mover best responses to first-mover
    action ``i``, in canonical index order.
    """

    br_map: tuple[tuple[int, ...], ...]

    def selections(self) -> Iterator[tuple[int, ...]]:
        """Every pure selection ``s`` with ``s[i] in br_map[i]``, lexicographically."""
        return itertools.product(*self.br_map)

    @property
    def multiplicity(self) -> int:
        n = 1
        for brs in self.br_map:
            n *= len(brs)
        return n


@dataclass(frozen=True)
class GvoAssessment:
    """A pure General Virtual Observability assessment.

    ``sigma1``/``sigma2`` index the first and second mover's actions in the
    role-normalized game; ``profile`` is the same outcome in the source
    game's ``(a1, a2)`` coordinates. ``conjecture_selection`` is ``None`` for
    simultaneous games, where no conjecture applies.
    """

    sigma1: int
    sigma2: int
    mu: Belief
    conjecture_selection: tuple[int, ...] | None
    profile: Profile


@dataclass(frozen=True)
class RefinementVerdict:
    """Outcome of the Virtual Observability Refinement.

    ``selected`` is non-empty exactly when timing selects a strict subset of
    the Nash set. ``matched`` always holds the erased-game SPE outcomes that
    are Nash equilibria of the original game.
    """

    selected: frozenset[Profile]
    matched: frozenset[Profile]
    spe_outcomes: frozenset[Profile]

    @property
    def timing_irrelevant(self) -> bool:
        return not self.selected

    @property
    def kind(self) -> str:
        return "TimingIrrelevant" if self.timing_irrelevant else "Selected"


@dataclass(frozen=True)
class DominanceRound:
    round: int
    removed1: tuple[int, ...]
    removed2: tuple[int, ...]


@dataclass(frozen=True)
class DominanceResult:
    survivors1: tuple[int, ...]
    survivors2: tuple[int, ...]
    trace: tuple[DominanceRound, ...] = field(default=())

    def profiles(self) -> list[Profile]:
        return [Profile(i, j) for i in self.survivors1 for j in self.survivors2]


def _argmax(values: Mapping[int, Fraction] | Sequence[Fraction]) -> tuple[int, ...]:
    items = values.items() if isinstance(values, Mapping) else enumerate(values)
    items = list(items)
    best = max(v for _, v in items)
    return tuple(k for k, v in items if v == best)


def best_responses(game: TimedGame, player: int, opponent_action: int) -> tuple[int, ...]:
    """Exact argmax set of ``player``'s payoff against a fixed opponent action."""
    rows, cols = game.shape
    if player == 1:
        if not 0 <= opponent_action < cols:
            raise IndexError(f"player 2 action index {opponent_action} out of range")
        return _argmax([game.u1[i][opponent_action] for i in range(rows)])
    if player == 2:
        if not 0 <= opponent_action < rows:
            raise IndexError(f"player 1 action index {opponent_action} out of range")
        return _argmax(game.u2[opponent_action])
    raise ValueError("player must be 1 or 2")


def expected_payoffs_to_belief(game: TimedGame, mu: Belief) -> list[Fraction]:
    rows, cols = game.shape
    if len(mu.weights) != rows:
        raise ValueError("belief size does not match player 1's action set")
    return [sum((mu.weights[i] * game.u2[i][j] for i in range(rows)), Fraction(0))
            for j in range(cols)]


def best_responses_to_belief(game: TimedGame, mu: Belief, player: int = 2) -> tuple[int, ...]:
    """Player 2's argmax set of expected payoff under belief ``mu`` over player 1's actions."""
    if player != 2:
        raise ValueError("beliefs are held by player 2 only")
    return _argmax(expected_payoffs_to_belief(game, mu))


def is_pure_nash(game: TimedGame, i: int, j: int) -> bool:
    rows, cols = game.shape
    u1, u2 = game.u1, game.u2
    return (all(u1[k][j] <= u1[i][j] for k in range(rows))
            and all(u2[i][k] <= u2[i][j] for k in range(cols)))


def pure_nash(game: TimedGame) -> list[Profile]:
    """Every pure profile with no strictly improving unilateral deviation."""
    require_valid(game)
    rows, cols = game.shape
    # column maxima for player 1, row maxima for player 2
    best1 = [max(game.u1[i][j] for i in range(rows)) for j in range(cols)]
    best2 = [max(row) for row in game.u2]
    return [Profile(i, j) for i in range(rows) for j in range(cols)
            if game.u1[i][j] == best1[j] and game.u2[i][j] == best2[i]]


def _dominates(better: Sequence[Fraction], worse: Sequence[Fraction], weak: bool) -> bool:
    if weak:
        return (all(b >= w for b, w in zip(better, worse))
                and any(b > w for b, w in zip(better, worse)))
    return all(b > w for b, w in zip(better, worse))


def _dominated(rows: dict[int, list[Fraction]], weak: bool) -> tuple[int, ...]:
    return tuple(a for a in rows
                 if any(_dominates(rows[b], rows[a], weak) for b in rows if b != a))


def iterated_dominance(game: TimedGame, mode: str = "weak") -> DominanceResult:
    """Iterated elimination of actions dominated by a remaining pure action.

    Each round removes, for both players at once, every action dominated
    against all remaining opponent actions. ``mode`` is ``"weak"`` or
    ``"strict"``.
    """
    if mode not in ("weak", "strict"):
        raise ValueError("mode must be 'weak' or 'strict'")
    require_valid(game)
    weak = mode == "weak"
    alive1 = list(range(game.shape[0]))
    alive2 = list(range(game.shape[1]))
    trace = []
    while True:
        rows1 = {i: [game.u1[i][j] for j in alive2] for i in alive1}
        rows2 = {j: [game.u2[i][j] for i in alive1] for j in alive2}
        gone1, gone2 = _dominated(rows1, weak), _dominated(rows2, weak)
        if not gone1 and not gone2:
            break
        trace.append(DominanceRound(len(trace) + 1, gone1, gone2))
        alive1 = [i for i in alive1 if i not in gone1]
        alive2 = [j for j in alive2 if j not in gone2]
    return DominanceResult(tuple(alive1), tuple(alive2), tuple(trace))


def _sequential(game: TimedGame | NormalizedGame) -> NormalizedGame:
    norm = normalize_roles(game)
    if norm.game.timing is Timing.SIMULTANEOUS:
        raise SolverError(
            "virtual observability has no effect in simultaneous games; use pure_nash")
    return norm


def virtual_conjecture(game: TimedGame | NormalizedGame) -> VirtualConjecture:
    """Second-mover best responses at every first-mover action (erased information set)."""
    g = _sequential(game).game
    return VirtualConjecture(tuple(best_responses(g, 2, i) for i in range(g.shape[0])))


def conjectured_payoffs(game: TimedGame, selection: Sequence[int]) -> list[Fraction]:
    """Player 1's payoff at each action when player 2 replies per ``selection``."""
    return [game.u1[i][selection[i]] for i in range(game.shape[0])]


@dataclass(frozen=True)
class SpeOutcome:
    profile: Profile
    selection: tuple[int, ...]


def subgame_perfect_erased(game: TimedGame | NormalizedGame) -> list[SpeOutcome]:
    """SPE outcomes of the perfect-information game with the first move made visible.

    One entry per (pure selection, first-mover argmax). Profiles are in the
    source game's coordinates.
    """
    norm = _sequential(game)
    g = norm.game
    out = []
    for sel in virtual_conjecture(norm).selections():
        for i in _argmax(conjectured_payoffs(g, sel)):
            out.append(SpeOutcome(Profile(*norm.to_original(i, sel[i])), sel))
    return out


def gvo(game: TimedGame) -> list[GvoAssessment]:
    """Enumerate pure General Virtual Observability assessments.

    Simultaneous games yield one assessment per pure Nash equilibrium. For
    sequential games, every conjecture selection, every first-mover argmax
    under it and every second-mover best response to the point-mass belief
    produces an assessment. Each result is re-checked against the defining
    conditions before it is returned.
    """
    norm = normalize_roles(game)
    g = norm.game
    rows = g.shape[0]
    if g.timing is Timing.SIMULTANEOUS:
        return [GvoAssessment(p.a1_index, p.a2_index, Belief.point_mass(rows, p.a1_index),
                              None, p)
                for p in pure_nash(g)]
    out = []
    for sel in virtual_conjecture(norm).selections():
        for i in _argmax(conjectured_payoffs(g, sel)):
            mu = Belief.point_mass(rows, i)
            for j in best_responses_to_belief(g, mu):
                a = GvoAssessment(i, j, mu, sel, Profile(*norm.to_original(i, j)))
                if not check_gvo(g, a):
                    raise InvariantViolation(f"assessment {a} fails the GVO conditions")
                out.append(a)
    return out


def check_gvo(game: TimedGame, a: GvoAssessment) -> bool:
    """Check conditions (i)-(iv) for a pure assessment on a P1-first game."""
    rows, cols = game.shape
    sel = a.conjecture_selection
    if sel is None or len(sel) != rows:
        return False
    # (i) conjecture puts mass only on best responses at every history
    for i in range(rows):
        if game.u2[i][sel[i]] != max(game.u2[i]):
            return False
    # (ii) sigma1 maximizes payoff against the conjecture
    conj = conjectured_payoffs(game, sel)
    if conj[a.sigma1] != max(conj):
        return False
    # (iii) belief equals sigma1
    if a.mu != Belief.point_mass(rows, a.sigma1):
        return False
    # (iv) sigma2 best-responds to the belief
    exp = expected_payoffs_to_belief(game, a.mu)
    return exp[a.sigma2] == max(exp)


def gvo_outcomes(assessments: Sequence[GvoAssessment]) -> list[Profile]:
    return sorted({a.profile for a in assessments})


def vo_refinement(game: TimedGame) -> RefinementVerdict:
    """Weber-Camerer-Knez refinement on a sequential game.

    SPE outcomes of the erased game are matched against the pure Nash set of
    the original game (the second mover's strategy flattened to the action
    played on path). Timing matters only when the matches pick out a strict
    subset of the Nash equilibria; otherwise the verdict is
    ``TimingIrrelevant``.
    """
    require_valid(game)
    if game.timing is Timing.SIMULTANEOUS:
        raise SolverError("the refinement needs a sequential game")
    spe = frozenset(o.profile for o in subgame_perfect_erased(game))
    nash = frozenset(pure_nash(game))
    matched = spe & nash
    selected = matched if matched and matched != nash else frozenset()
    return RefinementVerdict(selected, matched, spe)

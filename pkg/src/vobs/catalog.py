"""Generators for the Traveler's Dilemma, the modified trust game and a weak PD."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Callable

from .model import ActionSet, TimedGame, Timing, require_valid
from .rational import parse_rat


class CatalogError(ValueError):
    """Invalid generator parameters."""


@dataclass(frozen=True)
class TdParams:
    min_claim: Fraction = Fraction(4)
    max_claim: Fraction = Fraction(8)
    step: Fraction = Fraction(1, 2)
    penalty_reward: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for f in fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))
        if self.step <= 0:
            raise CatalogError("step must be positive")
        if self.penalty_reward < 0:
            raise CatalogError("penalty_reward must be non-negative")
        if self.min_claim >= self.max_claim:
            raise CatalogError("min_claim must be below max_claim")
        if ((self.max_claim - self.min_claim) / self.step).denominator != 1:
            raise CatalogError("claim range must be a whole number of steps")

    def claims(self) -> list[Fraction]:
        n = int((self.max_claim - self.min_claim) / self.step)
        return [self.min_claim + k * self.step for k in range(n + 1)]


def td_payoff(own: Fraction, other: Fraction, reward: Fraction) -> Fraction:
    if own == other:
        return own
    low = min(own, other)
    return low + reward if own < other else low - reward


def travelers_dilemma(p: TdParams = TdParams(), timing: Timing = Timing.SIMULTANEOUS,
                      name: str | None = None) -> TimedGame:
    claims = p.claims()
    r = p.penalty_reward
    u1 = [[td_payoff(a, b, r) for b in claims] for a in claims]
    u2 = [[td_payoff(b, a, r) for b in claims] for a in claims]
    actions = ActionSet.from_values(claims)
    if name is None:
        name = "td_sim" if timing is Timing.SIMULTANEOUS else "td_seq"
    return TimedGame(name, actions, actions, u1, u2, timing)


class Mover(enum.Enum):
    INVESTOR = "investor"
    TRUSTEE = "trustee"


def _levels(n: int = 5) -> tuple[Fraction, ...]:
    return tuple(Fraction(k) for k in range(n))


@dataclass(frozen=True)
class TrustParams:
    endowment: Fraction = Fraction(4)
    invest_levels: tuple[Fraction, ...] = field(default_factory=_levels)
    return_levels: tuple[Fraction, ...] = field(default_factory=_levels)
    first_mover: Mover = Mover.INVESTOR
    display_scale_return: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "endowment", Fraction(self.endowment))
        for name in ("invest_levels", "return_levels"):
            levels = tuple(Fraction(x) for x in getattr(self, name))
            object.__setattr__(self, name, levels)
            if any(b <= a for a, b in zip(levels, levels[1:])):
                raise CatalogError(f"{name} must be strictly increasing")
            if 0 not in levels:
                raise CatalogError(f"{name} must contain 0")
        if self.endowment <= 0:
            raise CatalogError("endowment must be positive")
        if int(self.display_scale_return) != self.display_scale_return or self.display_scale_return < 1:
            raise CatalogError("display_scale_return must be a positive integer")
        object.__setattr__(self, "display_scale_return", int(self.display_scale_return))


def trust_payoffs(p: TrustParams, invest: Fraction, ret: Fraction) -> tuple[Fraction, Fraction]:
    """``(investor, trustee)`` payoffs; the transfer fails unless ``ret >= invest``."""
    e = p.endowment
    if ret >= invest:
        return e - invest + 2 * ret, e + 3 * invest - 2 * ret
    return e / 2, e / 2


def trust_game(p: TrustParams = TrustParams(), name: str | None = None) -> TimedGame:
    """Investor is always player 1 (rows, ``I``); trustee is player 2 (columns, ``R``)."""
    cells = [[trust_payoffs(p, i, r) for r in p.return_levels] for i in p.invest_levels]
    timing = Timing.P1_FIRST if p.first_mover is Mover.INVESTOR else Timing.P2_FIRST
    if name is None:
        name = "trust_if" if p.first_mover is Mover.INVESTOR else "trust_tf"
    return TimedGame(
        name,
        ActionSet.from_values(p.invest_levels),
        ActionSet.from_values(p.return_levels),
        [[c[0] for c in row] for row in cells],
        [[c[1] for c in row] for row in cells],
        timing,
    )


def display_return(p: TrustParams, ret) -> Fraction:
    ret = Fraction(ret)
    if ret not in p.return_levels:
        raise CatalogError(f"{ret} is not a return level")
    return p.display_scale_return * ret


def parse_displayed_return(p: TrustParams, displayed) -> Fraction:
    displayed = Fraction(displayed)
    ret = displayed / p.display_scale_return
    if ret not in p.return_levels:
        raise CatalogError(f"displayed return {displayed} does not map to a return level")
    return ret


@dataclass(frozen=True)
class WeakPdParams:
    """Cells keyed ``u<player>_<row><col>`` over actions C and D.

    The defaults are a stand-in built to satisfy the weak PD's defining
    properties; :func:`weak_pd` checks those properties on every instance.
    """

    u1_CC: Fraction = Fraction(4)
    u1_CD: Fraction = Fraction(0)
    u1_DC: Fraction = Fraction(5)
    u1_DD: Fraction = Fraction(1)
    u2_CC: Fraction = Fraction(4)
    u2_CD: Fraction = Fraction(4)
    u2_DC: Fraction = Fraction(0)
    u2_DD: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for f in fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))


class WeakPdError(CatalogError):
    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        super().__init__(f"({invariant}) {message}")


def _weak_pd_raw(p: WeakPdParams, timing: Timing, name: str) -> TimedGame:
    u1 = [[p.u1_CC, p.u1_CD], [p.u1_DC, p.u1_DD]]
    u2 = [[p.u2_CC, p.u2_CD], [p.u2_DC, p.u2_DD]]
    actions = ActionSet(("C", "D"))
    return TimedGame(name, actions, actions, u1, u2, timing,
                     metadata=(("payoffs", "stand-in; original figure values unavailable"),))


def check_weak_pd(p: WeakPdParams) -> None:
    """Raise :class:`WeakPdError` naming the first failed property (a)-(d)."""
    from .equilibrium import Profile, gvo, gvo_outcomes, pure_nash

    sim = _weak_pd_raw(p, Timing.SIMULTANEOUS, "weak_pd")
    cc, dd = Profile(0, 0), Profile(1, 1)
    if pure_nash(sim) != [dd]:
        raise WeakPdError("a", "(D,D) must be the unique pure Nash equilibrium")
    weak_dom = (
        p.u1_DC >= p.u1_CC and p.u1_DD >= p.u1_CD and (p.u1_DC > p.u1_CC or p.u1_DD > p.u1_CD),
        p.u2_CD >= p.u2_CC and p.u2_DD >= p.u2_DC and (p.u2_CD > p.u2_CC or p.u2_DD > p.u2_DC),
    )
    if not any(weak_dom):
        raise WeakPdError("b", "D must weakly dominate C for at least one player")
    if not (p.u1_CC > p.u1_DD and p.u2_CC > p.u2_DD):
        raise WeakPdError("c", "(C,C) must strictly Pareto-dominate (D,D)")
    if cc not in gvo_outcomes(gvo(sim.with_timing(Timing.P1_FIRST))):
        raise WeakPdError("d", "(C,C) must be a GVO outcome when player 1 moves first")


def weak_pd(p: WeakPdParams = WeakPdParams(), timing: Timing = Timing.P1_FIRST,
            name: str = "weak_pd") -> TimedGame:
    check_weak_pd(p)
    return _weak_pd_raw(p, timing, name)


BUILTINS = ("td_sim", "td_seq", "trust_if", "trust_tf", "weak_pd")


def _apply(params, overrides: dict[str, str], aliases: dict[str, str] | None = None):
    aliases = aliases or {}
    names = {f.name for f in fields(params)}
    changes = {}
    for key, text in overrides.items():
        key = aliases.get(key, key)
        if key not in names or key in ("invest_levels", "return_levels", "first_mover"):
            raise CatalogError(f"unknown parameter {key!r} for {type(params).__name__}")
        changes[key] = parse_rat(text)
    return replace(params, **changes)


def builtin(name: str, overrides: dict[str, str] | None = None) -> TimedGame:
    """Resolve a CLI builtin name, applying ``key=value`` overrides (decimal grammar)."""
    overrides = overrides or {}
    makers: dict[str, Callable[[], TimedGame]] = {
        "td_sim": lambda: travelers_dilemma(
            _apply(TdParams(), overrides, {"R": "penalty_reward"}), Timing.SIMULTANEOUS),
        "td_seq": lambda: travelers_dilemma(
            _apply(TdParams(), overrides, {"R": "penalty_reward"}), Timing.P1_FIRST),
        "trust_if": lambda: trust_game(
            _apply(TrustParams(first_mover=Mover.INVESTOR), overrides, {"E": "endowment"})),
        "trust_tf": lambda: trust_game(
            _apply(TrustParams(first_mover=Mover.TRUSTEE), overrides, {"E": "endowment"})),
        "weak_pd": lambda: weak_pd(_apply(WeakPdParams(), overrides)),
    }
    if name not in makers:
        raise CatalogError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
    game = makers[name]()
    require_valid(game)
    return game

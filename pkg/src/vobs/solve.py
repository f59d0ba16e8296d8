"""Uniform front end over the solvers, producing serializable results."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .equilibrium import (Profile, gvo, iterated_dominance, pure_nash, subgame_perfect_erased,
                          virtual_conjecture, vo_refinement)
from .model import TimedGame, Timing
from .rational import format_rat

CONCEPTS = ("nash", "weak-dom", "strict-dom", "spe", "vo", "gvo")


@dataclass(frozen=True)
class SolveResult:
    concept: str
    game_name: str
    outcomes: list[dict]
    trace: list[dict] | None = None
    verdict: str | None = None
    profiles: list[Profile] = field(default_factory=list, compare=False)

    def to_dict(self) -> dict:
        out = {"concept": self.concept, "game_name": self.game_name, "outcomes": self.outcomes}
        if self.trace is not None:
            out["trace"] = self.trace
        if self.verdict is not None:
            out["verdict"] = self.verdict
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.concept} on {self.game_name}"]
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        for o in self.outcomes:
            extra = "".join(f" {k}={v}" for k, v in o.items() if k not in ("actions", "payoffs"))
            lines.append(f"  ({', '.join(o['actions'])}) -> ({', '.join(o['payoffs'])}){extra}")
        for step in self.trace or []:
            p1 = " ".join(step["p1_removed"]) or "-"
            p2 = " ".join(step["p2_removed"]) or "-"
            lines.append(f"  round {step['round']}: p1 removes {p1}; p2 removes {p2}")
        return "\n".join(lines) + "\n"


def _outcome(game: TimedGame, p: Profile, **extra) -> dict:
    return {"actions": list(p.labels(game)),
            "payoffs": [format_rat(x) for x in game.payoffs(p.a1_index, p.a2_index)], **extra}


def solve(game: TimedGame, concept: str) -> SolveResult:
    if concept not in CONCEPTS:
        raise ValueError(f"concept must be one of {', '.join(CONCEPTS)}")
    if concept == "nash":
        ps = pure_nash(game)
        return SolveResult(concept, game.name, [_outcome(game, p) for p in ps], profiles=ps)
    if concept in ("weak-dom", "strict-dom"):
        res = iterated_dominance(game, concept.split("-")[0])
        ps = res.profiles()
        trace = [{"round": r.round,
                  "p1_removed": [game.a1.labels[i] for i in r.removed1],
                  "p2_removed": [game.a2.labels[j] for j in r.removed2]} for r in res.trace]
        return SolveResult(concept, game.name, [_outcome(game, p) for p in ps], trace,
                           profiles=ps)
    if concept == "spe":
        counts = Counter(o.profile for o in subgame_perfect_erased(game))
        ps = sorted(counts)
        return SolveResult(concept, game.name,
                           [_outcome(game, p, selections=counts[p]) for p in ps], profiles=ps)
    if concept == "vo":
        v = vo_refinement(game)
        ps = sorted(v.selected)
        return SolveResult(concept, game.name, [_outcome(game, p) for p in ps],
                           verdict=v.kind, profiles=ps)
    assessments = gvo(game)
    counts = Counter(a.profile for a in assessments)
    ps = sorted(counts)
    if game.timing is Timing.SIMULTANEOUS:
        outcomes = [_outcome(game, p) for p in ps]
    else:
        mult = virtual_conjecture(game).multiplicity
        outcomes = [_outcome(game, p, assessments=counts[p], tie_multiplicity=mult) for p in ps]
    return SolveResult(concept, game.name, outcomes, profiles=ps)

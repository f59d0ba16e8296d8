"""Equilibrium solvers and analysis tools for two-player games in which the
second mover knows the first mover has acted but cannot see the action."""

from .catalog import (TdParams, TrustParams, WeakPdParams, builtin, travelers_dilemma,
                      trust_game, weak_pd)
from .equilibrium import (Belief, GvoAssessment, Profile, RefinementVerdict,
                          VirtualConjecture, best_responses, best_responses_to_belief, gvo,
                          gvo_outcomes, iterated_dominance, pure_nash, subgame_perfect_erased,
                          virtual_conjecture, vo_refinement)
from .gamespec import GameSpecError, parse_game, serialize_game
from .model import (ActionSet, NormalizedGame, TimedGame, Timing, affine_transform,
                    normalize_roles, validate)

__all__ = [
    "ActionSet", "Belief", "GameSpecError", "GvoAssessment", "NormalizedGame", "Profile",
    "RefinementVerdict", "TdParams", "TimedGame", "Timing", "TrustParams",
    "VirtualConjecture", "WeakPdParams", "affine_transform", "best_responses",
    "best_responses_to_belief", "builtin", "gvo", "gvo_outcomes", "iterated_dominance",
    "normalize_roles", "parse_game", "pure_nash", "serialize_game", "subgame_perfect_erased",
    "travelers_dilemma", "trust_game", "validate", "virtual_conjecture", "vo_refinement",
    "weak_pd",
]

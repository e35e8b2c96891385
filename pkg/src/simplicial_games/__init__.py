"""Solver for impartial games summed over a simplicial complex."""

from .emperor import (
    EmperorInstance,
    EmperorMove,
    emperor_moves,
    emperor_outcome_brute,
    emperor_outcome_fast,
    emperor_sum_outcome,
    emperor_winning_move,
)
from .game_core import GameGraph, Outcome, validate_graph
from .rulesets import RulesetSpec, explicit_game, multi_nim, nim_heap, subtraction_game
from .simplicial import (
    NimTable,
    SimplicialComplex,
    bouton_outcome,
    complex_from_maximal_faces,
    discrete_complex,
    full_simplex,
    nim_moves,
    nim_outcome,
    nim_pset,
)

__all__ = [
    "EmperorInstance",
    "EmperorMove",
    "GameGraph",
    "NimTable",
    "Outcome",
    "RulesetSpec",
    "SimplicialComplex",
    "bouton_outcome",
    "complex_from_maximal_faces",
    "discrete_complex",
    "emperor_moves",
    "emperor_outcome_brute",
    "emperor_outcome_fast",
    "emperor_sum_outcome",
    "emperor_winning_move",
    "explicit_game",
    "full_simplex",
    "multi_nim",
    "nim_heap",
    "nim_moves",
    "nim_outcome",
    "nim_pset",
    "subtraction_game",
    "validate_graph",
]

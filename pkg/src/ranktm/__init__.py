"""Turing machines executed by iterated ranking-function revision."""

from .logic import ALL_FORMULAS, OMEGA, World, complement, entails, is_consistent
from .ocf import EpistemicState, Preorder, RankingFunction, fallback_revise
from .revision import CompiledOperator, Shape, compile_operator
from .simulate import SimulationResult, simulate_tm
from .turing import Configuration, Tape, TuringMachine, parse_tm, run

__all__ = [
    "ALL_FORMULAS",
    "OMEGA",
    "World",
    "complement",
    "entails",
    "is_consistent",
    "EpistemicState",
    "Preorder",
    "RankingFunction",
    "fallback_revise",
    "CompiledOperator",
    "Shape",
    "compile_operator",
    "SimulationResult",
    "simulate_tm",
    "Configuration",
    "Tape",
    "TuringMachine",
    "parse_tm",
    "run",
]

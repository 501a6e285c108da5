"""Run a Turing machine purely by revising a ranking function.

The driver never looks at the machine's transition table; it only feeds
the five fixed formulas to the operator, watches whether ``whalt`` has
become believed, and decodes the tape once it has.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, TextIO

from .logic import World
from .ocf import EpistemicState, belief_models, state_to_json
from .revision import DecodeError, Phi, Shape, classify, compile_operator, conf_of, initial_ranking
from .turing import Configuration, TuringMachine

__all__ = [
    "LOOP_BODY",
    "LINE_SHAPES",
    "TraceEvent",
    "SimulationResult",
    "SimulationIntegrityError",
    "simulate_tm",
    "JsonlTraceWriter",
]

# (line, formula) pairs of one loop iteration, in order
LOOP_BODY: tuple[tuple[int, Phi], ...] = (
    (4, Phi.ZERO_POS),
    (5, Phi.ZERO),
    (6, Phi.ZERO_Q_HALT),
    (7, Phi.ZERO_Q_POS),
    (8, Phi.Q_HALT),
)

# shape every line's result is supposed to have
LINE_SHAPES = {1: Shape.CONF, 2: Shape.PEEK, 4: Shape.CONF, 5: Shape.TRANS,
               6: Shape.POST, 7: Shape.CONF, 8: Shape.PEEK, 9: Shape.CONF}


class SimulationIntegrityError(RuntimeError):
    """The ranking stopped encoding a configuration mid-run."""


@dataclass(frozen=True)
class TraceEvent:
    """One revision of a simulation run.

    ``conf_after`` decodes the result under the shape its line is
    supposed to produce (for TRANS, the configuration before the
    transition); it is ``None`` when that decoding fails.
    """

    tm: TuringMachine = field(repr=False)
    step: int
    iteration: int
    line: int
    alpha: Phi | None
    case: str
    before: EpistemicState | None
    after: EpistemicState

    @property
    def expected_shape(self) -> Shape:
        return LINE_SHAPES[self.line]

    @property
    def shape_before(self) -> frozenset[Shape] | None:
        return None if self.before is None else classify(self.tm, self.before.kappa)

    @property
    def shape_after(self) -> frozenset[Shape]:
        return classify(self.tm, self.after.kappa)

    @cached_property
    def conf_after(self) -> Configuration | None:
        if not self.after.consistent:
            return None
        try:
            return conf_of(self.tm, self.after.kappa, self.expected_shape)
        except DecodeError:
            return None

    def to_json(self) -> dict:
        def shapes(s: frozenset[Shape] | None) -> list[str] | None:
            return None if s is None else sorted(x.value for x in s)

        conf = None
        if self.conf_after is not None:
            conf = {"state": self.conf_after.state, "tape": str(self.conf_after.tape)}
        return {
            "step": self.step,
            "iteration": self.iteration,
            "line": self.line,
            "alpha": None if self.alpha is None else self.alpha.label,
            "case": self.case,
            "shape_before": shapes(self.shape_before),
            "shape_after": shapes(self.shape_after),
            "ranks": state_to_json(self.after),
            "conf": conf,
        }


TraceSink = Callable[[TraceEvent], None]


@dataclass(frozen=True)
class SimulationResult:
    halted: bool
    output: str | None
    steps: int
    revisions_used: int
    final: Configuration | None = None

    @property
    def outcome(self) -> str:
        return "halted" if self.halted else "fuel_exhausted"


def simulate_tm(
    tm: TuringMachine,
    word: str,
    fuel: int,
    trace: TraceSink | None = None,
    operator: Callable | None = None,
) -> SimulationResult:
    """Execute ``tm`` on ``word`` by iterated revision.

    ``fuel`` bounds the number of loop iterations, i.e. simulated
    machine steps. ``revisions_used`` counts the initial ranking as the
    first revision, so a run that exhausts its fuel reports
    ``2 + 5 * fuel``.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    op = operator if operator is not None else compile_operator(tm)
    revise = getattr(op, "revise", None)
    counter = 0
    iteration = 0

    def emit(line: int, alpha: Phi | None, case: str, before, after) -> None:
        if trace is not None:
            trace(TraceEvent(tm, counter, iteration, line, alpha, case, before, after))

    def apply(state: EpistemicState, line: int, phi: Phi) -> EpistemicState:
        nonlocal counter
        counter += 1
        if revise is not None:
            after, case = revise(state, phi.value)
        else:
            after, case = op(state, phi.value), "external"
        emit(line, phi, case, state, after)
        return after

    state = initial_ranking(tm, word)
    counter = 1
    emit(1, None, "initial", None, state)
    state = apply(state, 2, Phi.Q_HALT)

    while World.WHALT not in belief_models(state):
        if iteration == fuel:
            return SimulationResult(False, None, iteration, counter)
        iteration += 1
        for line, phi in LOOP_BODY:
            state = apply(state, line, phi)

    state = apply(state, 9, Phi.ZERO_POS)
    try:
        final = conf_of(tm, state.kappa, Shape.CONF)
    except DecodeError as exc:
        raise SimulationIntegrityError(f"final ranking does not decode: {exc}") from exc
    return SimulationResult(True, final.tape.word(), iteration, counter, final)


class JsonlTraceWriter:
    """Trace sink writing one JSON object per line."""

    def __init__(self, stream: TextIO) -> None:
        self.stream = stream

    def __call__(self, event: TraceEvent) -> None:
        self.stream.write(json.dumps(event.to_json()) + "\n")


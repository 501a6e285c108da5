"""Conformance batteries, oracle equivalence and the bundled machine corpus."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from typing import Callable, Iterable, Iterator

from .encoding import enc_pos
from .logic import ALL_FORMULAS, World, format_formula, is_consistent
from .ocf import (
    EpistemicState,
    RankingFunction,
    check_dp,
    check_success,
    quantitative_violations,
    state_to_json,
)
from .revision import CompiledOperator, Phi, Shape
from .simulate import SimulationIntegrityError, TraceEvent, simulate_tm
from .turing import Configuration, Tape, TuringMachine, parse_tm, run, start_config, step

__all__ = [
    "Counterexample",
    "ConformanceReport",
    "gen_ranking",
    "all_rankings",
    "all_states",
    "gen_shaped_state",
    "revision_failures",
    "run_conformance",
    "run_shaped_conformance",
    "run_equivalence",
    "CorpusEntry",
    "corpus_names",
    "load_corpus",
]

Operator = Callable[[EpistemicState, frozenset], EpistemicState]

MAX_STORED_FAILURES = 50


@dataclass(frozen=True)
class Counterexample:
    index: int
    check: str
    state: EpistemicState | None = None
    alpha: frozenset | None = None
    beta: frozenset | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "check": self.check,
            "state": None if self.state is None else state_to_json(self.state),
            "alpha": None if self.alpha is None else format_formula(self.alpha),
            "beta": None if self.beta is None else format_formula(self.beta),
            "detail": self.detail,
        }


@dataclass
class ConformanceReport:
    """Outcome of one battery.

    ``counts`` tallies every failure by check name; ``failures`` keeps the
    first few counterexamples, ordered by trial index.
    """

    suite: str
    seed: int | None = None
    trials: int = 0
    counts: Counter = field(default_factory=Counter)
    failures: list[Counterexample] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if not self.counts else "fail"

    @property
    def passed(self) -> bool:
        return not self.counts

    def add(self, failure: Counterexample) -> None:
        self.counts[failure.check] += 1
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append(failure)

    def merge(self, other: ConformanceReport) -> None:
        self.trials += other.trials
        self.counts.update(other.counts)
        for failure in other.failures:
            if len(self.failures) < MAX_STORED_FAILURES:
                self.failures.append(failure)
        self.failures.sort(key=lambda f: f.index)

    def summary(self) -> str:
        if self.passed:
            return f"{self.suite}: pass ({self.trials} trials)"
        tally = ", ".join(f"{name}={count}" for name, count in sorted(self.counts.items()))
        return f"{self.suite}: FAIL ({self.trials} trials; {tally})"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "verdict": self.verdict,
            "counts": dict(sorted(self.counts.items())),
            "failures": [f.to_json() for f in self.failures],
        }


def _rng(seed: int | random.Random, index: int | None = None) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(f"{seed}/{index}" if index is not None else seed)


def gen_ranking(seed: int | random.Random, max_rank: int) -> RankingFunction:
    """Uniform draw from the rankings with every rank in ``0..max_rank``."""
    if max_rank < 0:
        raise ValueError("max_rank must be non-negative")
    rng = _rng(seed)
    while True:
        ranks = [rng.randint(0, max_rank) for _ in World]
        if min(ranks) == 0:
            return RankingFunction(*ranks)


def all_rankings(max_rank: int) -> Iterator[RankingFunction]:
    for ranks in product(range(max_rank + 1), repeat=len(World)):
        if min(ranks) == 0:
            yield RankingFunction(*ranks)


def all_states(max_rank: int) -> Iterator[EpistemicState]:
    for k in all_rankings(max_rank):
        yield EpistemicState(k, True)
        yield EpistemicState(k, False)


def _random_tape(tm: TuringMachine, rng: random.Random, max_len: int) -> Tape:
    def word() -> str:
        return "".join(rng.choice(tm.alphabet) for _ in range(rng.randint(0, max_len)))

    center = rng.choice(tm.alphabet) if rng.random() < 0.9 else ""
    return Tape(word(), center, word())


def gen_shaped_state(tm: TuringMachine, seed: int | random.Random, max_len: int = 3) -> EpistemicState:
    """A random ranking in one of the four simulation shapes for ``tm``.

    TRANS and POST rankings are built from a genuine transition of a
    random non-halting configuration, the way a simulation produces them.
    """
    rng = _rng(seed)
    n = tm.n
    tape = _random_tape(tm, rng, max_len)
    code = enc_pos(tm, tape)
    shape = rng.choice([Shape.CONF, Shape.PEEK, Shape.TRANS, Shape.POST])
    if shape is Shape.CONF:
        k = RankingFunction(w0=0, wq=rng.randint(1, n), whalt=n, wpos=n + 1 + code)
    elif shape is Shape.PEEK:
        k = RankingFunction(w0=1, wq=0, whalt=rng.randint(0, n - 1), wpos=n + 2 + code)
    else:
        i = rng.randint(1, n - 1)
        succ = step(tm, Configuration(i, tape))
        assert succ is not None
        j = succ.state
        whalt = n - (i - j)
        if shape is Shape.TRANS:
            k = RankingFunction(w0=0, wq=j, whalt=whalt, wpos=n + 1 + code - (i - j))
        else:
            k = RankingFunction(w0=0, wq=j, whalt=whalt, wpos=n + 1 + enc_pos(tm, succ.tape))
    return EpistemicState(k)


def revision_failures(
    s: EpistemicState, f: frozenset, r: EpistemicState, index: int
) -> list[Counterexample]:
    """Success and Q1-Q4 checks for one revision ``s * f = r``."""
    out = []
    if not check_success(s, f, r):
        out.append(Counterexample(index, "success", s, f, detail=f"result {state_to_json(r)}"))
    if is_consistent(f):
        for name in quantitative_violations(s.kappa, f, r.kappa):
            out.append(Counterexample(index, name, s, f, detail=f"result {state_to_json(r)}"))
    return out


def _safe(op: Operator, s: EpistemicState, f: frozenset) -> EpistemicState | Exception:
    try:
        return op(s, f)
    except Exception as exc:  # a broken operator is a finding, not a crash
        return exc


def _check_single(op: Operator, s: EpistemicState, f: frozenset, index: int) -> list[Counterexample]:
    r = _safe(op, s, f)
    if isinstance(r, Exception):
        return [Counterexample(index, "error", s, f, detail=repr(r))]
    return revision_failures(s, f, r, index)


def _check_pair(op: Operator, s: EpistemicState, f1: frozenset, f2: frozenset, index: int) -> list[Counterexample]:
    try:
        report = check_dp(op, s, f1, f2)
    except Exception as exc:
        return [Counterexample(index, "error", s, f1, f2, detail=repr(exc))]
    return [Counterexample(index, name, s, f1, f2) for name in report.violations()]


def _shrink(
    fails: Callable[[EpistemicState, frozenset, frozenset | None], bool],
    state: EpistemicState,
    alpha: frozenset,
    beta: frozenset | None,
    budget: int = 200,
) -> tuple[EpistemicState, frozenset, frozenset | None]:
    """Greedily lower ranks and drop formula models while the failure persists."""
    improved = True
    while improved and budget > 0:
        improved = False
        candidates = []
        k = state.kappa
        for w in World:
            for lower in (0, k[w] // 2, k[w] - 1):
                if 0 <= lower < k[w]:
                    ranks = dict(k.items())
                    ranks[w] = lower
                    if min(ranks.values()) == 0:
                        candidates.append((EpistemicState(RankingFunction.from_mapping(ranks), state.consistent), alpha, beta))
        for w in alpha:
            candidates.append((state, alpha - {w}, beta))
        for w in beta or ():
            candidates.append((state, alpha, beta - {w}))
        for cand in candidates:
            budget -= 1
            try:
                still = fails(*cand)
            except Exception:
                still = False
            if still:
                state, alpha, beta = cand
                improved = True
                break
            if budget <= 0:
                break
    return state, alpha, beta


def _minimized(op: Operator, failure: Counterexample) -> Counterexample:
    assert failure.state is not None and failure.alpha is not None
    if failure.beta is None:
        def fails(s, a, _b):
            return any(c.check == failure.check for c in _check_single(op, s, a, failure.index))
    else:
        def fails(s, a, b):
            return any(c.check == failure.check for c in _check_pair(op, s, a, b, failure.index))
    s, a, b = _shrink(fails, failure.state, failure.alpha, failure.beta)
    return Counterexample(failure.index, failure.check, s, a, b, failure.detail)


def run_conformance(
    op: Operator,
    *,
    trials: int = 10_000,
    max_rank: int = 3,
    seed: int = 0,
    exhaustive: bool = False,
    states: Iterable[EpistemicState] | None = None,
    suite: str = "conformance",
    minimize: bool = True,
) -> ConformanceReport:
    """Apply the success, Q1-Q4 and DP1-DP4 checks to ``op``.

    Exhaustive mode enumerates every state with ranks up to ``max_rank``
    (both flags), every formula for the single-revision checks and every
    ordered formula pair for DP. Otherwise ``trials`` random
    ``(state, alpha, beta)`` triples are drawn; trial ``i`` uses its own
    stream seeded from ``(seed, i)`` and can be replayed alone. Extra
    ``states`` are checked against every formula and formula pair.
    """
    report = ConformanceReport(suite=suite, seed=None if exhaustive else seed)
    index = 0

    def record(found: list[Counterexample]) -> None:
        for failure in found:
            report.add(_minimized(op, failure) if minimize and failure.check != "error" else failure)

    def full(s: EpistemicState) -> None:
        nonlocal index
        for alpha in ALL_FORMULAS:
            record(_check_single(op, s, alpha, index))
            for beta in ALL_FORMULAS:
                record(_check_pair(op, s, alpha, beta, index))
            index += 1
            report.trials += 1

    if exhaustive:
        for s in all_states(max_rank):
            full(s)
    else:
        for i in range(trials):
            rng = _rng(seed, i)
            s = EpistemicState(gen_ranking(rng, max_rank), rng.random() >= 0.125)
            alpha = rng.choice(ALL_FORMULAS)
            beta = rng.choice(ALL_FORMULAS)
            record(_check_single(op, s, alpha, i))
            record(_check_pair(op, s, alpha, beta, i))
            report.trials += 1
        index = trials
    for s in states or ():
        full(s)
    report.failures.sort(key=lambda f: f.index)
    return report


def run_shaped_conformance(
    tm: TuringMachine,
    op: Operator | None = None,
    *,
    trials: int = 10_000,
    seed: int = 0,
    dp: bool = False,
    suite: str = "shaped",
) -> ConformanceReport:
    """Random states in the simulation shapes, revised mostly by the driving formulas."""
    op = op if op is not None else CompiledOperator(tm)
    report = ConformanceReport(suite=suite, seed=seed)
    driving = [phi.value for phi in Phi]
    for i in range(trials):
        rng = _rng(seed, i)
        s = gen_shaped_state(tm, rng)
        alpha = rng.choice(driving) if rng.random() < 0.75 else rng.choice(ALL_FORMULAS)
        for failure in _check_single(op, s, alpha, i):
            report.add(failure)
        if dp:
            for failure in _check_pair(op, s, alpha, rng.choice(driving), i):
                report.add(failure)
        report.trials += 1
    return report


def _words(alphabet: tuple[str, ...], max_len: int) -> Iterator[str]:
    for length in range(max_len + 1):
        for letters in product(alphabet, repeat=length):
            yield "".join(letters)


def run_equivalence(
    tm: TuringMachine,
    max_len: int,
    fuel: int,
    *,
    operator: Operator | None = None,
    check_revisions: bool = True,
    suite: str = "equivalence",
    fail_fast: bool = False,
) -> ConformanceReport:
    """Compare simulation by revision against the direct interpreter.

    For every input of length up to ``max_len`` over the full alphabet:
    outputs and fuel exhaustion must agree, and after every loop
    iteration the decoded configuration must equal the interpreter's
    configuration after the same number of steps. With
    ``check_revisions`` every revision is also checked for its expected
    shape, for not hitting the fallback, and for success and Q1-Q4.
    Failure kinds: ``output``, ``lockstep``, ``shape``, ``fallback``,
    ``integrity``, ``success``, ``Q1``-``Q4``. ``fail_fast`` stops after
    the first input that produced any failure.
    """
    op = operator if operator is not None else CompiledOperator(tm)
    report = ConformanceReport(suite=suite)
    for index, word in enumerate(_words(tm.alphabet, max_len)):
        if fail_fast and not report.passed:
            break
        report.trials += 1
        oracle = run(tm, word, fuel)
        expected = start_config(tm, word)
        lockstep_ok = True

        def sink(event: TraceEvent) -> None:
            nonlocal expected, lockstep_ok
            where = f"input {word!r} step {event.step} line {event.line}"
            if event.line == 8 and expected is not None:
                expected = step(tm, expected)
            if event.line in (2, 8) and lockstep_ok:
                if event.conf_after != expected:
                    lockstep_ok = False
                    report.add(Counterexample(index, "lockstep", event.after, detail=(
                        f"{where}: decoded {event.conf_after}, oracle {expected}")))
            if not check_revisions or event.before is None:
                return
            if event.expected_shape not in event.shape_after:
                report.add(Counterexample(index, "shape", event.before, event.alpha.value, detail=(
                    f"{where}: expected {event.expected_shape.value}, "
                    f"got {sorted(s.value for s in event.shape_after)}")))
            if event.case == "fallback":
                report.add(Counterexample(index, "fallback", event.before, event.alpha.value, detail=where))
            for failure in revision_failures(event.before, event.alpha.value, event.after, index):
                report.add(Counterexample(index, failure.check, failure.state, failure.alpha,
                                          detail=f"{where}: {failure.detail}"))

        try:
            result = simulate_tm(tm, word, fuel, trace=sink, operator=op)
        except (SimulationIntegrityError, AssertionError, ValueError) as exc:
            report.add(Counterexample(index, "integrity", detail=f"input {word!r}: {exc!r}"))
            continue
        if result.halted != oracle.halted or result.output != oracle.output:
            report.add(Counterexample(index, "output", detail=(
                f"input {word!r}: revision {result.outcome} {result.output!r}, "
                f"oracle {'halted' if oracle.halted else 'fuel_exhausted'} {oracle.output!r}")))
        elif result.steps != oracle.steps:
            report.add(Counterexample(index, "output", detail=(
                f"input {word!r}: {result.steps} simulated steps, oracle {oracle.steps}")))
    return report


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    tm: TuringMachine
    cases: tuple[tuple[str, str | None], ...]
    source: str


def _corpus_dir():
    return resources.files("ranktm") / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.name[:-3] for p in _corpus_dir().iterdir() if p.name.endswith(".tm"))


def load_corpus(name: str) -> CorpusEntry:
    base = _corpus_dir()
    source = (base / f"{name}.tm").read_text(encoding="utf-8")
    cases = json.loads((base / f"{name}.cases.json").read_text(encoding="utf-8"))
    return CorpusEntry(
        name=name,
        tm=parse_tm(source),
        cases=tuple((c["input"], c["output"]) for c in cases),
        source=source,
    )


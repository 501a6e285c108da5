"""Deterministic single-tape Turing machines and their direct interpreter.

The interpreter here is the oracle the revision-based simulation is
checked against, so it deliberately shares no code with it beyond the
data types.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, NamedTuple

__all__ = [
    "Move",
    "Tape",
    "Configuration",
    "TuringMachine",
    "MachineError",
    "MachineSyntaxError",
    "RunResult",
    "parse_tm",
    "load_tm",
    "start_config",
    "step",
    "iter_run",
    "run",
]


class MachineError(ValueError):
    """A machine or input violates the machine definition."""


class MachineSyntaxError(MachineError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Move(enum.Enum):
    L = "L"
    N = "N"
    R = "R"


class Tape(NamedTuple):
    """Head position as ``(left, center, right)``; ``center == ""`` is the empty cell."""

    left: str
    center: str
    right: str

    def word(self) -> str:
        return self.left + self.center + self.right

    def __str__(self) -> str:
        return f"{self.left or '~'}|{self.center or '~'}|{self.right or '~'}"


class Configuration(NamedTuple):
    state: int
    tape: Tape


@dataclass(frozen=True, eq=False)
class TuringMachine:
    """States are ``1..n`` and ``n`` is the halting state."""

    n: int
    start: int
    alphabet: tuple[str, ...]
    blank: str
    delta: Mapping[tuple[int, str], tuple[int, str, Move]] = field(repr=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise MachineError("a machine needs at least 2 states")
        if not 1 <= self.start <= self.n:
            raise MachineError(f"start state {self.start} out of range 1..{self.n}")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise MachineError("alphabet must be non-empty without repeats")
        if any(len(s) != 1 or s.isspace() for s in self.alphabet):
            raise MachineError("symbols must be single non-whitespace characters")
        if self.blank not in self.alphabet:
            raise MachineError(f"blank {self.blank!r} is not in the alphabet")
        for (state, read), (target, write, move) in self.delta.items():
            if state == self.n:
                raise MachineError("transition from halt state")
            if not 1 <= state < self.n or not 1 <= target <= self.n:
                raise MachineError(f"state index out of range in {state} {read} -> {target}")
            if read not in self.alphabet or write not in self.alphabet:
                raise MachineError(f"unknown symbol in {state} {read} -> {target} {write}")
            if not isinstance(move, Move):
                raise MachineError(f"bad move {move!r}")
        for state in range(1, self.n):
            for symbol in self.alphabet:
                if (state, symbol) not in self.delta:
                    raise MachineError(f"delta not total: missing ({state}, {symbol})")

    @property
    def halt(self) -> int:
        return self.n

    def index(self, symbol: str) -> int:
        """1-based position of ``symbol`` in the alphabet."""
        try:
            return self.alphabet.index(symbol) + 1
        except ValueError:
            raise MachineError(f"symbol {symbol!r} is not in the alphabet") from None

    def check_word(self, word: str) -> None:
        for symbol in word:
            if symbol not in self.alphabet:
                raise MachineError(f"symbol {symbol!r} is not in the alphabet")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_tm(text: str) -> TuringMachine:
    """Parse the line-oriented machine format.

    Header keys ``states``, ``start``, ``alphabet`` and ``blank`` come
    first, then ``delta:`` followed by one ``q s -> q' s' M`` entry per
    line. Errors carry the offending line number.
    """
    header: dict[str, tuple[str, int]] = {}
    entries: list[tuple[int, str]] = []
    in_delta = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if in_delta:
            entries.append((lineno, line))
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise MachineSyntaxError(f"expected 'key: value', got {line!r}", lineno)
        if key == "delta":
            if value.strip():
                raise MachineSyntaxError("'delta:' must be on its own line", lineno)
            in_delta = True
            continue
        if key not in ("states", "start", "alphabet", "blank"):
            raise MachineSyntaxError(f"unknown header {key!r}", lineno)
        if key in header:
            raise MachineSyntaxError(f"duplicate header {key!r}", lineno)
        header[key] = (value.strip(), lineno)

    for key in ("states", "start", "alphabet", "blank"):
        if key not in header:
            raise MachineSyntaxError(f"missing header {key!r}")
    if not in_delta:
        raise MachineSyntaxError("missing 'delta:' section")

    def _int(key: str) -> int:
        value, lineno = header[key]
        try:
            return int(value)
        except ValueError:
            raise MachineSyntaxError(f"{key} must be an integer, got {value!r}", lineno) from None

    n = _int("states")
    start = _int("start")
    if n < 2:
        raise MachineSyntaxError("states must be at least 2", header["states"][1])
    if not 1 <= start <= n:
        raise MachineSyntaxError(f"state index out of range: start {start}", header["start"][1])
    alphabet = tuple(header["alphabet"][0].split())
    if not alphabet:
        raise MachineSyntaxError("empty alphabet", header["alphabet"][1])
    for symbol in alphabet:
        if len(symbol) != 1:
            raise MachineSyntaxError(f"symbols must be single characters: {symbol!r}", header["alphabet"][1])
    if len(set(alphabet)) != len(alphabet):
        raise MachineSyntaxError("repeated alphabet symbol", header["alphabet"][1])
    blank = header["blank"][0]
    if blank not in alphabet:
        raise MachineSyntaxError(f"unknown symbol: blank {blank!r} not in alphabet", header["blank"][1])

    delta: dict[tuple[int, str], tuple[int, str, Move]] = {}
    for lineno, line in entries:
        lhs, arrow, rhs = line.partition("->")
        left, right = lhs.split(), rhs.split()
        if not arrow or len(left) != 2 or len(right) != 3:
            raise MachineSyntaxError(f"expected 'q s -> q s M', got {line!r}", lineno)
        try:
            state, target = int(left[0]), int(right[0])
        except ValueError:
            raise MachineSyntaxError(f"state must be an integer in {line!r}", lineno) from None
        read, write, move = left[1], right[1], right[2]
        if state == n:
            raise MachineSyntaxError("transition from halt state", lineno)
        if not 1 <= state <= n or not 1 <= target <= n:
            raise MachineSyntaxError(f"state index out of range in {line!r}", lineno)
        for symbol in (read, write):
            if symbol not in alphabet:
                raise MachineSyntaxError(f"unknown symbol {symbol!r}", lineno)
        if move not in ("L", "N", "R"):
            raise MachineSyntaxError(f"move must be L, N or R, got {move!r}", lineno)
        if (state, read) in delta:
            raise MachineSyntaxError(f"duplicate entry for ({state}, {read})", lineno)
        delta[(state, read)] = (target, write, Move(move))

    missing = [(q, s) for q in range(1, n) for s in alphabet if (q, s) not in delta]
    if missing:
        q, s = missing[0]
        raise MachineSyntaxError(f"delta not total: no entry for ({q}, {s})")
    return TuringMachine(n=n, start=start, alphabet=alphabet, blank=blank, delta=delta)


def load_tm(path: str | Path) -> TuringMachine:
    return parse_tm(Path(path).read_text(encoding="utf-8"))


def start_config(tm: TuringMachine, word: str) -> Configuration:
    tm.check_word(word)
    return Configuration(tm.start, Tape("", word[:1], word[1:]))


def step(tm: TuringMachine, c: Configuration) -> Configuration | None:
    """Apply one transition; ``None`` means ``c`` is already halted.

    An empty center cell reads as blank. Moving off either end of the
    written tape brings a blank under the head.
    """
    if c.state == tm.halt:
        return None
    left, center, right = c.tape
    target, write, move = tm.delta[(c.state, center or tm.blank)]
    if move is Move.N:
        tape = Tape(left, write, right)
    elif move is Move.R:
        tape = Tape(left + write, right[:1] or tm.blank, right[1:])
    else:
        tape = Tape(left[:-1], left[-1:] or tm.blank, write + right)
    return Configuration(target, tape)


def iter_run(tm: TuringMachine, word: str, fuel: int) -> Iterator[Configuration]:
    """Yield the start configuration and at most ``fuel`` successors."""
    c = start_config(tm, word)
    yield c
    for _ in range(fuel):
        c = step(tm, c)
        if c is None:
            return
        yield c


@dataclass(frozen=True)
class RunResult:
    halted: bool
    output: str | None
    steps: int
    final: Configuration


def run(tm: TuringMachine, word: str, fuel: int) -> RunResult:
    """Run at most ``fuel`` steps; the output is ``left + center + right`` untrimmed."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    steps = -1
    c = None
    for steps, c in enumerate(iter_run(tm, word, fuel)):
        pass
    assert c is not None
    if c.state == tm.halt:
        return RunResult(True, c.tape.word(), steps, c)
    return RunResult(False, None, steps, c)

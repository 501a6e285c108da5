import pytest

from ranktm.harness import corpus_names, load_corpus
from ranktm.turing import (
    Configuration,
    MachineError,
    MachineSyntaxError,
    Move,
    Tape,
    TuringMachine,
    iter_run,
    parse_tm,
    run,
    start_config,
    step,
)

THREE_STATE = """\
# swaps a and b until the first blank
states: 3
start: 1
alphabet: a b _
blank: _
delta:
1 a -> 2 b R
1 b -> 1 a R
1 _ -> 3 _ N
2 a -> 2 a N   # trailing comment
2 b -> 1 b R
2 _ -> 3 _ N
"""


def machine() -> TuringMachine:
    return parse_tm(THREE_STATE)


def test_parse_well_formed():
    tm = parse_tm(THREE_STATE)
    assert tm.n == 3 and tm.halt == 3 and tm.start == 1
    assert tm.alphabet == ("a", "b", "_") and tm.blank == "_"
    assert tm.delta[(1, "a")] == (2, "b", Move.R)
    assert tm.index("a") == 1 and tm.index("_") == 3


def _broken(old: str, new: str) -> str:
    assert old in THREE_STATE
    return THREE_STATE.replace(old, new)


@pytest.mark.parametrize("text, message, line", [
    (_broken("1 b -> 1 a R\n", ""), "delta not total", None),
    (THREE_STATE + "3 a -> 1 a N\n", "transition from halt state", 13),
    (THREE_STATE + "1 a -> 1 a N\n", "duplicate entry", 13),
    (_broken("2 b -> 1 b R", "2 c -> 1 b R"), "unknown symbol", 11),
    (_broken("2 b -> 1 b R", "2 b -> 4 b R"), "state index out of range", 11),
    (_broken("2 b -> 1 b R", "2 b -> 1 b X"), "move must be", 11),
    (_broken("2 b -> 1 b R", "2 b 1 b R"), "expected", 11),
    (_broken("start: 1", "start: 0"), "state index out of range", 3),
    (_broken("blank: _", "blank: z"), "unknown symbol", 5),
    (_broken("states: 3", "states: 1"), "at least 2", 2),
    (_broken("states: 3", "states: three"), "integer", 2),
    (_broken("alphabet: a b _", "alphabet: a bb _"), "single characters", 4),
    (_broken("start: 1\n", ""), "missing header", None),
    (_broken("delta:\n", ""), "expected 'key: value'", 6),
])
def test_parse_errors(text, message, line):
    with pytest.raises(MachineSyntaxError) as info:
        parse_tm(text)
    assert message in str(info.value)
    assert info.value.line == line


def test_constructor_validates():
    delta = {(1, "a"): (2, "a", Move.N)}
    TuringMachine(2, 1, ("a",), "a", delta)
    with pytest.raises(MachineError, match="not total"):
        TuringMachine(2, 1, ("a", "b"), "a", delta)
    with pytest.raises(MachineError, match="halt"):
        TuringMachine(2, 1, ("a",), "a", {**delta, (2, "a"): (1, "a", Move.N)})
    with pytest.raises(MachineError):
        TuringMachine(2, 3, ("a",), "a", delta)


def test_start_config():
    tm = machine()
    assert start_config(tm, "aba") == Configuration(1, Tape("", "a", "ba"))
    assert start_config(tm, "") == Configuration(1, Tape("", "", ""))
    assert start_config(tm, "b") == Configuration(1, Tape("", "b", ""))
    with pytest.raises(MachineError):
        start_config(tm, "abc")


def test_step_moves():
    tm = machine()
    assert step(tm, Configuration(1, Tape("", "a", "ba"))) == Configuration(2, Tape("b", "b", "a"))
    assert step(tm, Configuration(2, Tape("", "a", ""))) == Configuration(2, Tape("", "a", ""))
    assert step(tm, Configuration(3, Tape("", "a", ""))) is None


def test_step_reads_empty_cell_as_blank():
    tm = machine()
    assert step(tm, Configuration(1, Tape("", "", ""))) == Configuration(3, Tape("", "_", ""))


def test_moving_off_the_written_tape_brings_a_blank():
    tm = parse_tm("states: 2\nstart: 1\nalphabet: a _\nblank: _\ndelta:\n1 a -> 1 a L\n1 _ -> 2 a R\n")
    c = Configuration(1, Tape("", "a", ""))
    c = step(tm, c)
    assert c == Configuration(1, Tape("", "_", "a"))
    assert step(tm, c) == Configuration(2, Tape("a", "a", ""))


def test_run_immediate_halt():
    tm = load_corpus("immediate_halt").tm
    result = run(tm, "", 10)
    assert result.halted and result.output == "_" and result.steps == 1


def test_run_loop_exhausts_fuel():
    tm = load_corpus("loop").tm
    result = run(tm, "_", 100)
    assert not result.halted and result.output is None and result.steps == 100


def test_run_unary_successor():
    assert run(load_corpus("unary_successor").tm, "aa", 100).output == "aaa"


def test_iter_run_counts_configurations():
    tm = load_corpus("binary_increment").tm
    trace = list(iter_run(tm, "11", 100))
    assert trace[-1].state == tm.halt
    assert len(trace) == run(tm, "11", 100).steps + 1


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_tables(name):
    entry = load_corpus(name)
    assert entry.cases
    for word, expected in entry.cases:
        result = run(entry.tm, word, 10_000)
        assert result.output == expected, word
        assert result.halted == (expected is not None)

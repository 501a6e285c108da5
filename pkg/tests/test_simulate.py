import io
import json

import pytest

from ranktm.harness import corpus_names, load_corpus
from ranktm.ocf import fallback_revise
from ranktm.revision import Shape
from ranktm.simulate import LINE_SHAPES, JsonlTraceWriter, simulate_tm
from ranktm.turing import parse_tm, run


def test_unary_successor_matches_oracle():
    tm = load_corpus("unary_successor").tm
    result = simulate_tm(tm, "aa", 100)
    oracle = run(tm, "aa", 100)
    assert result.halted and result.output == oracle.output == "aaa"
    assert result.steps == oracle.steps
    assert result.final == oracle.final


def test_loop_counts_revisions():
    tm = load_corpus("loop").tm
    result = simulate_tm(tm, "", 50)
    assert result.outcome == "fuel_exhausted"
    assert result.output is None
    assert result.steps == 50
    assert result.revisions_used == 2 + 5 * 50


def test_zero_fuel():
    tm = load_corpus("unary_successor").tm
    result = simulate_tm(tm, "a", 0)
    assert not result.halted and result.revisions_used == 2


def test_immediate_halt_runs_loop_once():
    tm = load_corpus("immediate_halt").tm
    events = []
    result = simulate_tm(tm, "", 10, trace=events.append)
    assert result.halted and result.output == run(tm, "", 10).output
    assert result.steps == 1
    assert [e.line for e in events] == [1, 2, 4, 5, 6, 7, 8, 9]
    assert result.revisions_used == len(events)


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_cases(name):
    entry = load_corpus(name)
    for word, expected in entry.cases:
        result = simulate_tm(entry.tm, word, 500)
        assert result.output == expected, word


def test_trace_shapes_match_line_labels():
    tm = load_corpus("binary_increment").tm
    events = []
    simulate_tm(tm, "101", 100, trace=events.append)
    assert [e.step for e in events] == list(range(1, len(events) + 1))
    for e in events:
        assert e.expected_shape is LINE_SHAPES[e.line]
        assert e.expected_shape in e.shape_after
        assert e.conf_after is not None
        if e.line > 1:
            assert e.case != "fallback"


def test_external_operator_is_driven_blindly():
    # the plain shift revision knows nothing about the machine, so it never halts it
    tm = load_corpus("unary_successor").tm
    result = simulate_tm(tm, "a", 5, operator=fallback_revise)
    assert not result.halted and result.revisions_used == 2 + 5 * 5


def test_negative_fuel():
    with pytest.raises(ValueError):
        simulate_tm(load_corpus("loop").tm, "", -1)


def test_jsonl_trace_format():
    tm = load_corpus("reverse").tm
    buffer = io.StringIO()
    result = simulate_tm(tm, "ab", 100, trace=JsonlTraceWriter(buffer))
    lines = [json.loads(line) for line in buffer.getvalue().splitlines()]
    assert len(lines) == result.revisions_used
    first, second, last = lines[0], lines[1], lines[-1]
    assert {"step", "line", "alpha", "shape_before", "shape_after", "ranks", "conf"} <= set(first)
    assert first["alpha"] is None and first["shape_before"] is None
    assert second["alpha"] == "phi_q_halt" and second["shape_after"] == [Shape.PEEK.value]
    assert all(isinstance(v, str) for v in second["ranks"].values())
    assert last["line"] == 9
    assert last["conf"] == {"state": tm.n, "tape": "b|a|___"}


def test_start_in_halt_state_skips_the_loop():
    tm = parse_tm("states: 2\nstart: 2\nalphabet: a _\nblank: _\ndelta:\n1 a -> 2 a N\n1 _ -> 2 _ N\n")
    result = simulate_tm(tm, "aa", 10)
    assert result.halted and result.output == "aa"
    assert result.steps == 0 and result.revisions_used == 3

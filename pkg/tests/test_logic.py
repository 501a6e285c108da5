import pytest

from ranktm.logic import (
    ALL_FORMULAS,
    OMEGA,
    World,
    complement,
    entails,
    format_formula,
    formula,
    is_consistent,
    parse_formula,
)

W0, WHALT, WQ, WPOS = World.W0, World.WHALT, World.WQ, World.WPOS


def test_sixteen_distinct_formulas():
    assert len(ALL_FORMULAS) == 16
    assert len(set(ALL_FORMULAS)) == 16
    assert frozenset() in ALL_FORMULAS and OMEGA in ALL_FORMULAS


def test_worlds_are_the_four_assignments():
    assert len({w.assignment for w in World}) == 4


def test_entails_is_subset():
    assert entails(formula(W0), formula(W0, WQ))
    assert not entails(formula(W0, WQ), formula(W0))
    for f in ALL_FORMULAS:
        assert entails(frozenset(), f)
        assert entails(f, OMEGA)


def test_complement_examples():
    assert complement(formula(W0, WPOS)) == formula(WHALT, WQ)
    assert complement(OMEGA) == frozenset()
    assert complement(frozenset()) == OMEGA


def test_complement_is_an_involution():
    for f in ALL_FORMULAS:
        assert complement(complement(f)) == f
        assert not f & complement(f)


def test_consistency():
    assert is_consistent(formula(WQ))
    assert is_consistent(OMEGA)
    assert not is_consistent(frozenset())


@pytest.mark.parametrize("f", ALL_FORMULAS)
def test_formula_text_roundtrip(f):
    assert parse_formula(format_formula(f)) == f


def test_parse_formula_rejects_unknown_world():
    with pytest.raises(ValueError):
        parse_formula("{w0,w9}")

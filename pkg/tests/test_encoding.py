from itertools import count, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ranktm.encoding import (
    dec_pos,
    dec_word,
    decodable,
    enc_pos,
    enc_word,
    format_tape,
    pair,
    parse_tape,
    unpair,
)
from ranktm.turing import MachineError, Tape, parse_tm

AB = parse_tm("states: 3\nstart: 1\nalphabet: a b\nblank: b\ndelta:\n"
              "1 a -> 1 a N\n1 b -> 1 b N\n2 a -> 2 a N\n2 b -> 2 b N\n")


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for letters in product(alphabet, repeat=n):
            yield "".join(letters)


def reference_enc(word, alphabet):
    # sum of digit * k^position with digits 1..k
    k = len(alphabet)
    return sum((alphabet.index(s) + 1) * k**i for i, s in enumerate(reversed(word)))


def reference_pairs(limit):
    # walk the diagonals x + y = d, y increasing
    for d in count():
        for y in range(d + 1):
            if limit == 0:
                return
            limit -= 1
            yield d - y, y


def small_triples():
    """Every triple whose outer words have length at most 4, all centers."""
    for left, right in product(list(words("ab", 4)), repeat=2):
        for center in ("", "a", "b"):
            yield Tape(left, center, right)


def test_word_examples():
    assert enc_word("", "ab") == 0
    assert enc_word("a", "ab") == 1
    assert enc_word("b", "ab") == 2
    assert enc_word("aa", "ab") == 3


@pytest.mark.parametrize("alphabet", ["a", "ab", "ab_", "0123456789", [chr(0x100 + i) for i in range(40)]])
def test_word_encoding_matches_reference(alphabet):
    seen = {}
    for w in words(alphabet, 3 if len(alphabet) < 10 else 2):
        code = enc_word(w, alphabet)
        assert code == reference_enc(w, list(alphabet))
        assert dec_word(code, alphabet) == w
        seen[code] = w
    # bijective: the codes are exactly 0..count-1
    assert sorted(seen) == list(range(len(seen)))


def test_word_rejects_foreign_symbol():
    with pytest.raises(MachineError):
        enc_word("abc", "ab")


def test_pairing_enumerates_diagonals():
    for z, (x, y) in enumerate(reference_pairs(5000)):
        assert pair(x, y) == z
        assert unpair(z) == (x, y)


@given(st.integers(0, 10**60), st.integers(0, 10**60))
def test_pairing_roundtrip_big(x, y):
    assert unpair(pair(x, y)) == (x, y)


def test_position_examples():
    assert enc_pos(AB, Tape("", "", "")) == 6
    assert dec_pos(AB, enc_pos(AB, Tape("a", "b", ""))) == Tape("a", "b", "")
    assert dec_pos(AB, 0) is None
    assert dec_pos(AB, 6 + pair(pair(0, len(AB.alphabet) + 5), 0)) is None
    for v in range(2 * AB.n):
        assert dec_pos(AB, v) is None and not decodable(AB, v)


def test_position_roundtrip_and_injectivity_exhaustive():
    codes = {}
    total_len_4 = 0
    for t in small_triples():
        code = enc_pos(AB, t)
        assert dec_pos(AB, code) == t
        assert decodable(AB, code)
        assert code not in codes, (t, codes.get(code))
        codes[code] = t
        total_len_4 += len(t.word()) <= 4
    assert len(codes) >= 1000
    assert total_len_4 == 227


def test_decodable_agrees_with_dec_pos():
    for v in range(5000):
        assert decodable(AB, v) == (dec_pos(AB, v) is not None)


def test_center_must_be_one_symbol():
    with pytest.raises(MachineError):
        enc_pos(AB, Tape("", "ab", ""))


def test_tape_text_roundtrip():
    for t in (Tape("", "", ""), Tape("ab", "a", ""), Tape("", "b", "ba")):
        assert parse_tape(format_tape(t)) == t
    assert parse_tape("a|~|b") == Tape("a", "", "b")
    with pytest.raises(ValueError):
        parse_tape("a|b")
    with pytest.raises(ValueError):
        parse_tape("a|bb|~")

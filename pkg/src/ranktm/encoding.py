"""Gödel numbering of tape positions.

A word is read as a bijective base-k numeral (symbols valued ``1..k``),
the three parts of a position are combined with Cantor pairing, and the
result is lifted by ``2n`` so that position ranks never reach down into
the band of ranks used for machine states.
"""

from __future__ import annotations

from math import isqrt
from typing import Sequence

from .turing import MachineError, Tape, TuringMachine

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"

__all__ = [
    "enc_word",
    "dec_word",
    "pair",
    "unpair",
    "enc_pos",
    "dec_pos",
    "decodable",
    "parse_tape",
    "format_tape",
]


def enc_word(word: str, alphabet: Sequence[str]) -> int:
    k = len(alphabet)
    if word.strip("".join(alphabet)):
        bad = next(s for s in word if s not in alphabet)
        raise MachineError(f"symbol {bad!r} is not in the alphabet")
    if k == 1:
        return len(word)
    if not word:
        return 0
    if k <= 36:
        # bijective digits 1..k are plain base-k digits 0..k-1 plus a repunit
        plain = word.translate(str.maketrans("".join(alphabet), _DIGITS[:k]))
        return int(plain, k) + (k ** len(word) - 1) // (k - 1)
    values = {s: i for i, s in enumerate(alphabet, start=1)}
    code = 0
    for symbol in word:
        code = code * k + values[symbol]
    return code


def dec_word(code: int, alphabet: Sequence[str]) -> str:
    if code < 0:
        raise ValueError("word codes are non-negative")
    k = len(alphabet)
    if k == 1:
        return alphabet[0] * code
    digits = []
    while code:
        code, digit = divmod(code - 1, k)
        digits.append(alphabet[digit])
    return "".join(reversed(digits))


def pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def enc_pos(tm: TuringMachine, tape: Tape) -> int:
    left, center, right = tape
    if len(center) > 1:
        raise MachineError(f"center cell holds one symbol, got {center!r}")
    c = tm.index(center) if center else 0
    inner = pair(pair(enc_word(left, tm.alphabet), c), enc_word(right, tm.alphabet))
    return 2 * tm.n + inner


def decodable(tm: TuringMachine, code: int) -> bool:
    """Whether :func:`dec_pos` would succeed, without building the words."""
    if code < 2 * tm.n:
        return False
    head, _ = unpair(code - 2 * tm.n)
    return unpair(head)[1] <= len(tm.alphabet)


def dec_pos(tm: TuringMachine, code: int) -> Tape | None:
    """Invert :func:`enc_pos`; ``None`` when ``code`` encodes no position."""
    if code < 2 * tm.n:
        return None
    head, right = unpair(code - 2 * tm.n)
    left, c = unpair(head)
    if c > len(tm.alphabet):
        return None
    center = tm.alphabet[c - 1] if c else ""
    return Tape(dec_word(left, tm.alphabet), center, dec_word(right, tm.alphabet))


def parse_tape(text: str) -> Tape:
    """Read ``l|c|r`` with ``~`` standing for the empty word."""
    parts = text.split("|")
    if len(parts) != 3:
        raise ValueError(f"expected 'l|c|r', got {text!r}")
    left, center, right = ("" if p == "~" else p for p in parts)
    if len(center) > 1:
        raise ValueError(f"center must be one symbol or '~', got {center!r}")
    return Tape(left, center, right)


def format_tape(tape: Tape) -> str:
    return str(tape)

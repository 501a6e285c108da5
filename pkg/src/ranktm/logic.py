"""Propositional semantics over the two-variable signature {a, b}.

Formulas are handled extensionally: a formula *is* its frozenset of models.
"""

from __future__ import annotations

import enum
from itertools import combinations

__all__ = [
    "World",
    "WORLDS",
    "Formula",
    "OMEGA",
    "ALL_FORMULAS",
    "formula",
    "entails",
    "complement",
    "is_consistent",
    "parse_formula",
    "format_formula",
]


class World(enum.IntEnum):
    """The four interpretations, keyed by their (a, b) truth assignment.

    Integer-valued so a world can index a rank tuple directly.
    """

    W0 = 0
    WHALT = 1
    WQ = 2
    WPOS = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @property
    def assignment(self) -> tuple[bool, bool]:
        return _ASSIGNMENT[self]

    @classmethod
    def from_label(cls, label: str) -> World:
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown world {label!r}") from None


_ASSIGNMENT = {
    World.W0: (False, False),
    World.WHALT: (False, True),
    World.WQ: (True, False),
    World.WPOS: (True, True),
}

WORLDS: tuple[World, ...] = tuple(World)

Formula = frozenset  # frozenset[World]

OMEGA: frozenset[World] = frozenset(World)

ALL_FORMULAS: tuple[frozenset[World], ...] = tuple(
    frozenset(c) for size in range(len(World) + 1) for c in combinations(World, size)
)


def formula(*worlds: World) -> frozenset[World]:
    return frozenset(worlds)


def entails(f1: frozenset[World], f2: frozenset[World]) -> bool:
    return f1 <= f2


def complement(f: frozenset[World]) -> frozenset[World]:
    return OMEGA - f


def is_consistent(f: frozenset[World]) -> bool:
    return bool(f)


def parse_formula(text: str) -> frozenset[World]:
    """Parse ``{w0,wpos}`` style text; ``{}`` is the inconsistent formula."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"formula must be wrapped in braces: {text!r}")
    names = [part.strip() for part in body[1:-1].split(",") if part.strip()]
    try:
        return frozenset(World.from_label(name) for name in names)
    except ValueError:
        raise ValueError(f"unknown world in formula {text!r}") from None


def format_formula(f: frozenset[World]) -> str:
    return "{" + ",".join(w.label for w in World if w in f) + "}"

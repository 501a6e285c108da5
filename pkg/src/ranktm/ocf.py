"""Ranking functions, epistemic states and executable revision postulates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .logic import WORLDS, World, complement, is_consistent

__all__ = [
    "RankingFunction",
    "EpistemicState",
    "Preorder",
    "Operator",
    "DPReport",
    "belief_models",
    "preorder_of",
    "min_models",
    "fallback_revise",
    "check_success",
    "quantitative_violations",
    "check_quantitative",
    "cr_violations",
    "check_cr",
    "check_dp",
    "state_to_json",
    "state_from_json",
]


@dataclass(frozen=True)
class RankingFunction:
    """A rank for every world; at least one world sits at rank 0.

    Ranks are Python ints, so tape codes of any size fit.
    """

    w0: int
    whalt: int
    wq: int
    wpos: int

    def __post_init__(self) -> None:
        ranks = (self.w0, self.whalt, self.wq, self.wpos)
        if not all(type(r) is int for r in ranks) or min(ranks) < 0:
            raise ValueError(f"ranks must be non-negative integers: {ranks}")
        if min(ranks) != 0:
            raise ValueError(f"a ranking function needs a rank-0 world: {ranks}")

    @classmethod
    def from_mapping(cls, ranks: dict[World, int]) -> RankingFunction:
        return cls(
            w0=ranks[World.W0],
            whalt=ranks[World.WHALT],
            wq=ranks[World.WQ],
            wpos=ranks[World.WPOS],
        )

    @property
    def ranks(self) -> tuple[int, int, int, int]:
        """Ranks in :class:`World` order."""
        return (self.w0, self.whalt, self.wq, self.wpos)

    def __getitem__(self, world: World) -> int:
        return self.ranks[world]

    def items(self) -> list[tuple[World, int]]:
        return list(zip(WORLDS, self.ranks))

    def models(self) -> frozenset[World]:
        return frozenset(w for w, r in zip(WORLDS, self.ranks) if r == 0)


@dataclass(frozen=True)
class EpistemicState:
    """A ranking function paired with the consistency flag.

    ``consistent=False`` is the bottom copy of ``kappa``: same ranks,
    empty belief set.
    """

    kappa: RankingFunction
    consistent: bool = True


Operator = Callable[[EpistemicState, frozenset], EpistemicState]


class Preorder(NamedTuple):
    """Total preorder stored as its ordered partition into levels."""

    levels: tuple[frozenset[World], ...]

    def level_of(self, world: World) -> int:
        for index, level in enumerate(self.levels):
            if world in level:
                return index
        raise KeyError(world)

    def leq(self, w1: World, w2: World) -> bool:
        return self.level_of(w1) <= self.level_of(w2)

    def lt(self, w1: World, w2: World) -> bool:
        return self.leq(w1, w2) and not self.leq(w2, w1)


def belief_models(s: EpistemicState) -> frozenset[World]:
    if not s.consistent:
        return frozenset()
    return s.kappa.models()


def preorder_of(k: RankingFunction) -> Preorder:
    ranks = k.ranks
    return Preorder(
        tuple(frozenset(w for w in WORLDS if ranks[w] == r) for r in sorted(set(ranks)))
    )


def min_models(f: frozenset[World], p: Preorder) -> frozenset[World]:
    for level in p.levels:
        hit = level & f
        if hit:
            return frozenset(hit)
    return frozenset()


def fallback_revise(s: EpistemicState, f: frozenset[World]) -> EpistemicState:
    """Shift the models of ``f`` down to rank 0 and push every counter-model up by one.

    An inconsistent ``f`` keeps the ranks and flags the result as bottom.
    The flag of ``s`` is ignored for consistent ``f``.
    """
    k = s.kappa
    if not is_consistent(f):
        return EpistemicState(k, consistent=False)
    old = k.ranks
    low = min(old[w] for w in f)
    ranks = [old[w] - low if w in f else old[w] + 1 for w in WORLDS]
    assert min(ranks) == 0
    return EpistemicState(RankingFunction(*ranks))


def check_success(s: EpistemicState, f: frozenset[World], r: EpistemicState) -> bool:
    """The result believes exactly the most plausible models of ``f``."""
    if not f:
        return not belief_models(r)
    ranks = s.kappa.ranks
    low = min(ranks[w] for w in f)
    return belief_models(r) == frozenset(w for w in f if ranks[w] == low)


def quantitative_violations(
    k: RankingFunction, f: frozenset[World], k2: RankingFunction
) -> list[str]:
    """Names of the quantitative postulates Q1-Q4 that ``k -> k2`` breaks under ``f``."""
    a, b = k.ranks, k2.ranks
    models = [w for w in WORLDS if w in f]
    others = [w for w in WORLDS if w not in f]
    broken = []
    # pairwise differences are kept iff every world moves by the same amount
    if len({b[w] - a[w] for w in models}) > 1:
        broken.append("Q1")
    if len({b[w] - a[w] for w in others}) > 1:
        broken.append("Q2")
    if any(a[u] < a[v] and not b[u] < b[v] for u in models for v in others):
        broken.append("Q3")
    if any(a[u] <= a[v] and not b[u] <= b[v] for u in models for v in others):
        broken.append("Q4")
    return broken


def check_quantitative(k: RankingFunction, f: frozenset[World], k2: RankingFunction) -> bool:
    return not quantitative_violations(k, f, k2)


def cr_violations(p: Preorder, f: frozenset[World], p2: Preorder) -> list[str]:
    models = [w for w in WORLDS if w in f]
    others = [w for w in WORLDS if w not in f]
    broken = []
    if any(p.leq(u, v) != p2.leq(u, v) for u in models for v in models):
        broken.append("CR1")
    if any(p.leq(u, v) != p2.leq(u, v) for u in others for v in others):
        broken.append("CR2")
    if any(p.lt(u, v) and not p2.lt(u, v) for u in models for v in others):
        broken.append("CR3")
    if any(p.leq(u, v) and not p2.leq(u, v) for u in models for v in others):
        broken.append("CR4")
    return broken


def check_cr(p: Preorder, f: frozenset[World], p2: Preorder) -> bool:
    return not cr_violations(p, f, p2)


class DPReport(NamedTuple):
    dp1: bool
    dp2: bool
    dp3: bool
    dp4: bool

    @property
    def ok(self) -> bool:
        return all(self)

    def violations(self) -> list[str]:
        return [name.upper() for name, held in zip(self._fields, self) if not held]


def check_dp(
    op: Operator, s: EpistemicState, f1: frozenset[World], f2: frozenset[World]
) -> DPReport:
    """Evaluate DP1-DP4 at the belief level with alpha = ``f1`` and beta = ``f2``.

    Vacuous antecedents count as satisfied. A bottom state believes
    nothing, so it entails every formula.
    """
    not_f1 = complement(f1)
    after_beta = belief_models(op(s, f2))
    after_both = belief_models(op(op(s, f1), f2))
    dp1 = not f2 <= f1 or after_both == after_beta
    dp2 = not f2 <= not_f1 or after_both == after_beta
    dp3 = not after_beta <= f1 or after_both <= f1
    dp4 = after_beta <= not_f1 or not after_both <= not_f1
    return DPReport(dp1, dp2, dp3, dp4)


def state_to_json(s: EpistemicState) -> dict[str, str]:
    data = {w.label: str(r) for w, r in s.kappa.items()}
    data["b"] = "top" if s.consistent else "bot"
    return data


def state_from_json(data: dict[str, str]) -> EpistemicState:
    try:
        ranks = {w: int(str(data[w.label]), 10) for w in WORLDS}
        flag = data.get("b", "top")
    except KeyError as exc:
        raise ValueError(f"missing world rank {exc}") from None
    if flag not in ("top", "bot"):
        raise ValueError(f"flag must be 'top' or 'bot', got {flag!r}")
    return EpistemicState(RankingFunction.from_mapping(ranks), consistent=flag == "top")


"""Deliberately broken operators used to show the batteries have teeth."""

from __future__ import annotations

from .logic import WORLDS, is_consistent
from .ocf import EpistemicState, RankingFunction
from .revision import CompiledOperator, Shape, conf_of
from .turing import step

__all__ = ["fallback_without_increment", "FlippedPriorStateOperator", "UnshiftedPositionOperator", "MUTANTS"]


def fallback_without_increment(s: EpistemicState, f: frozenset) -> EpistemicState:
    """Shift revision that forgets to push counter-models up."""
    k = s.kappa
    if not is_consistent(f):
        return EpistemicState(k, consistent=False)
    old = k.ranks
    low = min(old[w] for w in f)
    # the best model lands on 0, so this is still a valid ranking
    return EpistemicState(RankingFunction(*(old[w] - low if w in f else old[w] for w in WORLDS)))


class FlippedPriorStateOperator(CompiledOperator):
    """Reconstructs the prior state as ``wq - n + whalt``, which gives ``2j - i``."""

    def prior_state(self, k: RankingFunction) -> int:
        return k.wq - self.tm.n + k.whalt


class UnshiftedPositionOperator(CompiledOperator):
    """Moves ``wq`` and ``whalt`` on a state update but leaves ``wpos`` alone."""

    def update_state(self, k: RankingFunction) -> RankingFunction:
        c = conf_of(self.tm, k, Shape.CONF)
        succ = step(self.tm, c)
        assert succ is not None
        shift = succ.state - c.state
        return RankingFunction(w0=0, wq=succ.state, whalt=k.whalt + shift, wpos=k.wpos)


MUTANTS = {
    "fallback-no-increment": fallback_without_increment,
    "flipped-prior-state": FlippedPriorStateOperator,
    "unshifted-position": UnshiftedPositionOperator,
}

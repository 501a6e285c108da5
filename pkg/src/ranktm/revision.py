"""The machine-specific revision operator.

A ranking function over the four worlds stores a machine configuration:
the rank of ``wq`` is the state, the rank of ``wpos`` carries the encoded
tape position, and ``whalt`` is used to probe for halting and to remember
the prior state while a transition is in flight. Five fixed formulas
drive the machine; every other input is handled by the generic shift
revision from :mod:`ranktm.ocf`.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import NamedTuple

from .encoding import dec_pos, decodable, enc_pos
from .logic import World, is_consistent
from .ocf import EpistemicState, RankingFunction, fallback_revise
from .turing import Configuration, TuringMachine, start_config, step

__all__ = [
    "Shape",
    "Phi",
    "PHI_Q_HALT",
    "PHI_0",
    "PHI_0_POS",
    "PHI_0_Q_HALT",
    "PHI_0_Q_POS",
    "DecodeError",
    "ShapeLawError",
    "classify",
    "conf_of",
    "post_state",
    "initial_ranking",
    "Revision",
    "CompiledOperator",
    "compile_operator",
]


class Shape(enum.Enum):
    CONF = "CONF"
    PEEK = "PEEK"
    TRANS = "TRANS"
    POST = "POST"
    OTHER = "OTHER"


class Phi(enum.Enum):
    """The five formulas that drive a simulation, by model set."""

    Q_HALT = frozenset({World.WQ, World.WHALT})
    ZERO = frozenset({World.W0})
    ZERO_POS = frozenset({World.W0, World.WPOS})
    ZERO_Q_HALT = frozenset({World.W0, World.WQ, World.WHALT})
    ZERO_Q_POS = frozenset({World.W0, World.WQ, World.WPOS})

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Phi.Q_HALT: "phi_q_halt",
    Phi.ZERO: "phi_0",
    Phi.ZERO_POS: "phi_0_pos",
    Phi.ZERO_Q_HALT: "phi_0_q_halt",
    Phi.ZERO_Q_POS: "phi_0_q_pos",
}

PHI_Q_HALT = Phi.Q_HALT.value
PHI_0 = Phi.ZERO.value
PHI_0_POS = Phi.ZERO_POS.value
PHI_0_Q_HALT = Phi.ZERO_Q_HALT.value
PHI_0_Q_POS = Phi.ZERO_Q_POS.value

_BY_MODELS = {phi.value: phi for phi in Phi}


class DecodeError(ValueError):
    """A ranking function does not decode to a configuration under the asked shape."""


class ShapeLawError(AssertionError):
    """A special revision case produced a ranking of the wrong shape."""


def _conf_offset(tm: TuringMachine, k: RankingFunction) -> int:
    return k.wpos - (tm.n + 1)


def _peek_offset(tm: TuringMachine, k: RankingFunction) -> int:
    return k.wpos - (tm.n + 2)


def _trans_offset(tm: TuringMachine, k: RankingFunction) -> int:
    # undo the shift the state update applied to wpos
    return k.wpos + (tm.n - k.whalt) - (tm.n + 1)


def _decodes(tm: TuringMachine, code: int) -> bool:
    return code >= 0 and decodable(tm, code)


def _is_conf(tm: TuringMachine, k: RankingFunction) -> bool:
    n = tm.n
    return (
        k.w0 == 0
        and 1 <= k.wq <= n
        and k.whalt == n
        and k.wpos > n
        and _decodes(tm, _conf_offset(tm, k))
    )


def _is_peek(tm: TuringMachine, k: RankingFunction) -> bool:
    n = tm.n
    return (
        k.wq == 0
        and k.w0 == 1
        and 0 <= k.whalt <= n - 1
        and k.wpos > n + 1
        and _decodes(tm, _peek_offset(tm, k))
    )


def _in_flight(tm: TuringMachine, k: RankingFunction) -> bool:
    n = tm.n
    return k.w0 == 0 and 1 <= k.wq <= n and 2 <= k.whalt <= 2 * n - 1 and k.wpos > n


def _is_trans(tm: TuringMachine, k: RankingFunction) -> bool:
    return _in_flight(tm, k) and _decodes(tm, _trans_offset(tm, k))


def _is_post(tm: TuringMachine, k: RankingFunction) -> bool:
    return _in_flight(tm, k) and _decodes(tm, _conf_offset(tm, k))


_TESTS = (
    (Shape.CONF, _is_conf),
    (Shape.PEEK, _is_peek),
    (Shape.TRANS, _is_trans),
    (Shape.POST, _is_post),
)


@lru_cache(maxsize=1024)
def classify(tm: TuringMachine, k: RankingFunction) -> frozenset[Shape]:
    """Every shape whose constraints ``k`` meets, or ``{OTHER}``.

    The TRANS and POST envelopes contain most CONF rankings, so the
    result is a set; the revision formula disambiguates.
    """
    shapes = frozenset(shape for shape, test in _TESTS if test(tm, k))
    return shapes or frozenset({Shape.OTHER})


def post_state(k: RankingFunction) -> int:
    return k.wq


def conf_of(tm: TuringMachine, k: RankingFunction, shape: Shape) -> Configuration:
    """Decode the configuration ``k`` represents when read as ``shape``.

    For TRANS this is the configuration *before* the transition: the
    prior state is ``wq + n - whalt``.
    """
    n = tm.n
    if shape is Shape.CONF or shape is Shape.POST:
        state, code = k.wq, _conf_offset(tm, k)
    elif shape is Shape.PEEK:
        state, code = n - k.whalt, _peek_offset(tm, k)
    elif shape is Shape.TRANS:
        state, code = k.wq + n - k.whalt, _trans_offset(tm, k)
    else:
        raise DecodeError(f"no configuration for shape {shape.value}")
    tape = dec_pos(tm, code) if code >= 0 else None
    if tape is None:
        raise DecodeError(f"{shape.value} position code {code} does not decode")
    if not 1 <= state <= n:
        raise DecodeError(f"{shape.value} state index {state} outside 1..{n}")
    return Configuration(state, tape)


def initial_ranking(tm: TuringMachine, word: str) -> EpistemicState:
    c = start_config(tm, word)
    n = tm.n
    return EpistemicState(
        RankingFunction(w0=0, whalt=n, wq=c.state, wpos=n + 1 + enc_pos(tm, c.tape))
    )


class Revision(NamedTuple):
    """A revision result together with the dispatch case that produced it."""

    state: EpistemicState
    case: str


class CompiledOperator:
    """Revision operator that runs ``tm`` when fed the five driving formulas.

    Instances are callables ``(state, formula) -> state``. Dispatch looks
    at the formula first (exact model-set match), then at the shape of
    the ranking; anything unmatched is revised by :func:`fallback_revise`.
    Subclasses may override the per-case methods.
    """

    def __init__(self, tm: TuringMachine) -> None:
        self.tm = tm

    def __call__(self, s: EpistemicState, f: frozenset[World]) -> EpistemicState:
        return self.revise(s, f).state

    def revise(self, s: EpistemicState, f: frozenset[World]) -> Revision:
        phi = _BY_MODELS.get(frozenset(f))
        if phi is None or not s.consistent or not is_consistent(f):
            return Revision(fallback_revise(s, f), "fallback")
        k = s.kappa
        tm = self.tm
        result: RankingFunction | None = None
        expect = None
        if phi is Phi.Q_HALT and _is_conf(tm, k):
            result, case, expect = self.prepare_peek(k), "a", Shape.PEEK
        elif phi is Phi.ZERO and _is_conf(tm, k) and k.wq != tm.n:
            result, case, expect = self.update_state(k), "b", Shape.TRANS
        elif phi is Phi.ZERO_POS and _is_peek(tm, k):
            result, case, expect = self.obtain_conf(k), "c", Shape.CONF
        elif phi is Phi.ZERO_Q_HALT and _is_trans(tm, k):
            result, case, expect = self.update_tape(k), "d", Shape.POST
        elif phi is Phi.ZERO_Q_POS and _is_post(tm, k):
            result, case, expect = self.restore_halt(k), "e", Shape.CONF
        if result is None:
            return Revision(fallback_revise(s, f), "fallback")
        if expect not in classify(tm, result):
            raise ShapeLawError(f"case {case} should produce {expect.value}, got {result}")
        return Revision(EpistemicState(result), case)

    # (a) CONF + phi_q_halt -> PEEK
    def prepare_peek(self, k: RankingFunction) -> RankingFunction:
        return RankingFunction(w0=1, wq=0, whalt=k.whalt - k.wq, wpos=k.wpos + 1)

    # (b) CONF + phi_0 -> TRANS; wq/whalt/wpos all move by j - i
    def update_state(self, k: RankingFunction) -> RankingFunction:
        c = conf_of(self.tm, k, Shape.CONF)
        succ = step(self.tm, c)
        assert succ is not None
        shift = succ.state - c.state
        return RankingFunction(w0=0, wq=succ.state, whalt=k.whalt + shift, wpos=k.wpos + shift)

    # (c) PEEK + phi_0_pos -> CONF
    def obtain_conf(self, k: RankingFunction) -> RankingFunction:
        return RankingFunction(w0=0, wq=self.tm.n - k.whalt, whalt=self.tm.n, wpos=k.wpos - 1)

    def prior_state(self, k: RankingFunction) -> int:
        return k.wq + self.tm.n - k.whalt

    # (d) TRANS + phi_0_q_halt -> POST; None when k is not a genuine mid-transition
    def update_tape(self, k: RankingFunction) -> RankingFunction | None:
        tm = self.tm
        tape = dec_pos(tm, _trans_offset(tm, k))
        prior = self.prior_state(k)
        if tape is None or not 1 <= prior < tm.n:
            return None
        succ = step(tm, Configuration(prior, tape))
        if succ is None or succ.state != post_state(k):
            return None
        return RankingFunction(w0=0, wq=k.wq, whalt=k.whalt, wpos=tm.n + enc_pos(tm, succ.tape) + 1)

    # (e) POST + phi_0_q_pos -> CONF
    def restore_halt(self, k: RankingFunction) -> RankingFunction:
        return RankingFunction(w0=0, wq=k.wq, whalt=self.tm.n, wpos=k.wpos)


def compile_operator(tm: TuringMachine) -> CompiledOperator:
    return CompiledOperator(tm)

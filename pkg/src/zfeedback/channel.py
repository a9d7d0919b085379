"""Z-channel session runner with pluggable adversaries.

An adversary is consulted only at legal flip opportunities (a transmitted 1
while budget remains).  Its policy sees the step number, the sent bit, the
remaining budget, the transcript so far and the receiver's state, which is
everything an adaptive worst-case adversary could use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Optional, Sequence

from .core import ChannelContractError, CodeParams, ConfigError, Phase, Record, Transcript
from .decoder import Decoder
from .encoder import Encoder, eligible_total
from .numerics import bits_to_int, binomial

Policy = Callable[[int, int, int, Transcript, Decoder], bool]


class FeasibilityError(RuntimeError):
    """Exhaustive search would exceed the configured limit."""


@dataclass
class Adversary:
    policy: Policy
    budget: Optional[int] = None  # None: use the session's t
    name: str = "custom"


def no_adversary() -> Adversary:
    return Adversary(lambda *_: False, name="none")


def always_flip_adversary() -> Adversary:
    return Adversary(lambda *_: True, name="always")


def _greedy_policy(step, sent, budget, transcript, decoder: Decoder) -> bool:
    st = decoder.state
    if st.phase is not Phase.PARTITIONING:
        return True  # no M_{i+1} to compare; tie rule says flip
    d, p = decoder.params.delta, decoder.params.p
    prefix = decoder.subblock
    pad = d - len(prefix) - 1
    keep = bits_to_int(prefix + [1] + [0] * pad)
    flip = bits_to_int(prefix + [0] + [0] * pad)
    return eligible_total(st.M, flip, d, p) >= eligible_total(st.M, keep, d, p)


def greedy_adversary() -> Adversary:
    """Flips whenever that does not shrink the next message space (ties flip)."""
    return Adversary(_greedy_policy, name="greedy")


def random_adversary(seed: int) -> Adversary:
    rng = random.Random(seed)
    return Adversary(lambda *_: rng.random() < 0.5, name=f"random({seed})")


class SessionResult(NamedTuple):
    decoded: int
    transcript: Transcript
    encoder: Encoder
    decoder: Decoder


def simulate(params: CodeParams, m: int, adv: Optional[Adversary] = None,
             decoder_cls=Decoder, record: bool = True) -> SessionResult:
    """Drive encoder -> adversary -> decoder with instantaneous feedback.

    With ``record=False`` the per-symbol transcript is not kept (for timing);
    the adversary then sees an empty transcript.
    """
    adv = adv or no_adversary()
    budget = params.t if adv.budget is None else adv.budget
    enc = Encoder(params, m)
    dec = decoder_cls(params)
    transcript = Transcript(budget=budget)
    for step in range(params.n):
        phase = enc.state.phase
        sent = enc.next_bit()
        received = sent
        if sent == 1 and budget > 0 and adv.policy(step, sent, budget, transcript, dec):
            received = 0
            budget -= 1
        if record:
            transcript.append(Record(step, sent, received, phase))
        enc.observe(received)
        dec.observe(received)
    return SessionResult(dec.finish(), transcript, enc, dec)


def run_session(params: CodeParams, m: int, adv: Optional[Adversary] = None) -> tuple[int, Transcript]:
    res = simulate(params, m, adv)
    return res.decoded, res.transcript


def leaf_estimate(n: int, t: int) -> int:
    return sum(binomial(n, j) for j in range(t + 1))


def _drive(params: CodeParams, m: int, decisions: Sequence[bool],
           decoder_cls) -> tuple[tuple[int, ...], Optional[int], int]:
    """One scripted session: ``(received word, decoded or None, offers)``.

    Decoder failures are recorded as ``None``; the encoder keeps running so the
    number of choice points is always complete.
    """
    enc = Encoder(params, m)
    dec = decoder_cls(params)
    budget, offers, word = params.t, 0, []
    alive = True
    for _ in range(params.n):
        sent = enc.next_bit()
        received = sent
        if sent == 1 and budget > 0:
            if offers < len(decisions) and decisions[offers]:
                received, budget = 0, budget - 1
            offers += 1
        word.append(received)
        enc.observe(received)
        if alive:
            try:
                dec.observe(received)
            except (ChannelContractError, ConfigError):
                alive = False
    decoded = None
    if alive:
        try:
            decoded = dec.finish()
        except (ChannelContractError, ConfigError):
            pass
    return tuple(word), decoded, offers


def iter_leaves(params: CodeParams, m: int, limit: int = 10**6,
                decoder_cls=Decoder) -> Iterator[tuple[tuple[int, ...], Optional[int]]]:
    """Every adversary decision path as ``(received word, decoded index)``.

    A decoded index of ``None`` marks a decoder that raised.
    """
    if leaf_estimate(params.n, params.t) > limit:
        raise FeasibilityError(f"up to {leaf_estimate(params.n, params.t)} leaves exceed limit {limit}")
    stack: list[list[bool]] = [[]]
    while stack:
        prefix = stack.pop()
        word, decoded, offers = _drive(params, m, prefix, decoder_cls)
        for j in range(len(prefix), offers):
            stack.append(prefix + [False] * (j - len(prefix)) + [True])
        yield word, decoded


def verify_exhaustive(params: CodeParams, m: int, limit: int = 10**6,
                      decoder_cls=Decoder) -> bool:
    """True iff every admissible error pattern decodes back to ``m``."""
    try:
        return all(decoded == m for _, decoded in iter_leaves(params, m, limit, decoder_cls))
    except ConfigError:
        return False

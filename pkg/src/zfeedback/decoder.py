"""Receiver for the three-phase scheme.

The decoder needs no feedback: subblock weights reveal the error counts, so it
tracks ``(M_i, n_i, t_i)`` exactly as the encoder does.  Partitioning steps
are logged and undone in reverse once the final index is known.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, NamedTuple

from .core import ChannelContractError, CodeParams, ConfigError, Phase, SessionState, dispatch
from .encoder import StepRecord, partition_layout
from .numerics import bits_to_int, superset_ranks


class PartitionStep(NamedTuple):
    received: int
    M: int
    r: int


def reverse_step(j: int, step: PartitionStep, delta: int, p: int) -> int:
    """Map an index into the concatenated eligible segments back to ``M_i``."""
    if step.received == 0:
        return j
    lay = partition_layout(step.M, delta, p)
    ranks = superset_ranks(step.received, delta, p)
    n_large = bisect_left(ranks, lay.r)
    big = n_large * (lay.q + 1)
    if j < big:
        i, off = divmod(j, lay.q + 1)
    elif lay.q and j - big < (len(ranks) - n_large) * lay.q:
        i, off = divmod(j - big, lay.q)
        i += n_large
    else:
        raise ChannelContractError("index beyond the eligible segments")
    return lay.start(ranks[i]) + off


class Decoder:
    def __init__(self, params: CodeParams):
        self.params = params
        self.state = SessionState(M=params.M, n=params.n, t=params.t, phase=Phase.PARTITIONING)
        self.step_log: list[PartitionStep] = []
        self.history: list[StepRecord] = []
        self.received_tail: list[int] = []
        self.subblock: list[int] = []
        self.seen = 0
        self._enter()

    def _enter(self):
        st = self.state
        st.phase = dispatch(st.M, st.n, st.t)
        self.history.append(StepRecord(st.M, st.n, st.t, st.phase))
        if st.phase is Phase.PARTITIONING and st.n < self.params.delta:
            raise ConfigError(f"{st.n} uses left, fewer than a subblock of {self.params.delta}")

    @property
    def finished(self) -> bool:
        return self.seen >= self.params.n

    def observe(self, bit: int):
        if self.finished:
            raise RuntimeError(f"more than n={self.params.n} symbols observed")
        if bit not in (0, 1):
            raise ValueError(f"not a bit: {bit!r}")
        self.seen += 1
        if self.state.phase is not Phase.PARTITIONING:
            self.received_tail.append(bit)
            return
        self.subblock.append(bit)
        if len(self.subblock) == self.params.delta:
            self._close_subblock()

    def feed(self, bits: Iterable[int]):
        for b in bits:
            self.observe(b)

    def _close_subblock(self):
        st = self.state
        d, p = self.params.delta, self.params.p
        recv = bits_to_int(self.subblock)
        self.subblock = []
        w = recv.bit_count()
        if w > p:
            raise ChannelContractError(f"subblock weight {w} exceeds address weight {p}")
        e = p - w
        if e > st.t:
            raise ChannelContractError("more errors than the remaining budget")
        if recv:
            lay = partition_layout(st.M, d, p)
            self.step_log.append(PartitionStep(recv, st.M, lay.r))
            ranks = superset_ranks(recv, d, p)
            st.M = len(ranks) * lay.q + bisect_left(ranks, lay.r)
        else:
            # all-zero subblock: space unchanged, nothing to undo
            self.step_log.append(PartitionStep(recv, st.M, 0))
        st.t -= e
        st.n -= d
        self._enter()

    def final_index(self) -> int:
        """Index within the last message space, read from the tail."""
        st = self.state
        tail = self.received_tail
        if st.phase is Phase.WEIGHT:
            w = sum(tail)
            if w >= st.M:
                raise ChannelContractError(f"tail weight {w} but only {st.M} messages remain")
            return w
        if st.phase is Phase.UNCODED:
            width = (st.M - 1).bit_length()
            if width > len(tail):
                raise ConfigError("tail too short for the index")
            j = bits_to_int(tail[:width])
            if j >= st.M:
                raise ChannelContractError(f"index {j} but only {st.M} messages remain")
            return j
        raise ConfigError("session ended inside a partitioning step")

    def finish(self) -> int:
        if not self.finished:
            raise RuntimeError(f"only {self.seen} of {self.params.n} symbols observed")
        j = self.final_index()
        d, p = self.params.delta, self.params.p
        for step in reversed(self.step_log):
            j = reverse_step(j, step, d, p)
        return j


def decode(params: CodeParams, received: Iterable[int]) -> int:
    dec = Decoder(params)
    dec.feed(received)
    return dec.finish()

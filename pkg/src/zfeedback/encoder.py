"""Feedback encoder: Partitioning, Weight and Uncoded phases.

Messages are 0-based indices.  During Partitioning the current message space
``{0, ..., M_i - 1}`` is cut into ``C(delta, p)`` contiguous segments, larger
ones first, and segment ``j`` is addressed by the weight-``p`` word of rank
``j``.  After each subblock the eligible segments (addresses covering the
received word) are concatenated in rank order to form the next space.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .core import (ChannelContractError, CodeParams, ConfigError, Phase,
                   SessionState, dispatch)
from .numerics import binomial, bits_to_int, superset_ranks, unrank_value


class Layout(NamedTuple):
    """Segment sizes of a partition: the first ``r`` segments hold ``q + 1``
    messages, the other ``count - r`` hold ``q``."""

    count: int
    q: int
    r: int

    def size(self, rank: int) -> int:
        return self.q + 1 if rank < self.r else self.q

    def start(self, rank: int) -> int:
        return rank * self.q + min(rank, self.r)

    def locate(self, idx: int) -> tuple[int, int]:
        big = self.r * (self.q + 1)
        if idx < big:
            return divmod(idx, self.q + 1)
        seg, off = divmod(idx - big, self.q)
        return self.r + seg, off

    def sizes(self) -> list[int]:
        return [self.size(j) for j in range(self.count)]


def partition_layout(M: int, delta: int, p: int) -> Layout:
    if M < 1:
        raise ValueError("message space must be non-empty")
    c = binomial(delta, p)
    q, r = divmod(M, c)
    return Layout(c, q, r)


def eligible_total(M: int, received: int, delta: int, p: int) -> int:
    """Size of the next message space given an integer-coded received subblock."""
    if received == 0:
        return M
    q, r = divmod(M, binomial(delta, p))
    ranks = superset_ranks(received, delta, p)
    # ranks ascend, so the large segments among them form a prefix
    return len(ranks) * q + bisect_left(ranks, r)


def update_value(idx: int, M: int, received: int, delta: int, p: int,
                 lay: Optional[Layout] = None, seg: Optional[tuple[int, int]] = None) -> tuple[int, int]:
    """Integer-coded form of :func:`partition_update`.

    ``lay`` and ``seg`` (the result of ``lay.locate(idx)``) may be passed in
    to avoid recomputing big-integer divisions.
    """
    if received == 0:
        # every address covers the all-zero word: nothing is discarded
        return idx, M
    if lay is None:
        lay = partition_layout(M, delta, p)
    own, off = seg if seg is not None else lay.locate(idx)
    ranks = superset_ranks(received, delta, p)
    pos = bisect_left(ranks, own)
    if pos == len(ranks) or ranks[pos] != own:
        raise ChannelContractError("transmitted address is not consistent with the received subblock")
    n_large = bisect_left(ranks, lay.r)
    before = pos * lay.q + min(pos, n_large)
    return before + off, len(ranks) * lay.q + n_large


def partition_update(idx: int, M: int, received: Sequence[int], p: int) -> tuple[int, int]:
    """Next ``(idx, M)`` after a Partitioning subblock with output ``received``."""
    if not 0 <= idx < M:
        raise ValueError(f"idx={idx} outside [0, {M})")
    return update_value(idx, M, bits_to_int(received), len(received), p)


def select_params(tau: float, delta: int, k: int, eps: Optional[Fraction] = None) -> CodeParams:
    """Parameter schedule ``t = ceil(tau k delta)``, ``p = floor(delta (1 + tau) / 2)``.

    ``eps`` defaults to ``(1 - tau) / 4``, inside the admissible window
    ``(0, (1 - tau) / 2)``.  ``tau`` is converted to a rational first so every
    derived quantity is exact.
    """
    if not 0 < tau < 1:
        raise ConfigError(f"tau={tau!r} outside (0, 1)")
    if not k >= delta >= 2:
        raise ConfigError(f"need k >= delta >= 2, got delta={delta}, k={k}")
    tau_q = Fraction(tau).limit_denominator(10**6)
    t = math.ceil(tau_q * k * delta)
    p = math.floor(delta * (1 + tau_q) / 2)
    if p <= 0 or p >= delta:
        raise ConfigError(f"degenerate address weight p={p} for delta={delta}, tau={tau}")
    if eps is None:
        eps = (1 - tau_q) / 4
    params = CodeParams.build(delta, p, Fraction(eps), k, t)
    if params.M < 2:
        raise ConfigError(f"guaranteed message count {params.M} < 2")
    return params


@dataclass
class StepRecord:
    """Dispatch-point snapshot, shared format for encoder and decoder."""

    M: int
    n: int
    t: int
    phase: Phase


class Encoder:
    """Single-session encoder; call :meth:`next_bit` once per channel use and
    report each channel output through the next call (or :meth:`observe`)."""

    def __init__(self, params: CodeParams, message: int):
        if not 0 <= message < params.M:
            raise ValueError(f"message {message} outside [0, {params.M})")
        self.params = params
        self.message = message
        self.state = SessionState(M=params.M, n=params.n, t=params.t,
                                  phase=Phase.PARTITIONING, idx=message)
        self.history: list[StepRecord] = []
        self.used = 0
        self.flips = 0
        self._awaiting = False
        self._pending: list[int] = []
        self._sub_sent: list[int] = []
        self._sub_recv: list[int] = []
        self._ones = 0
        self._last = 0
        self._enter()

    @property
    def finished(self) -> bool:
        return self.used >= self.params.n

    def _enter(self):
        st = self.state
        phase = dispatch(st.M, st.n, st.t)
        st.phase = phase
        self.history.append(StepRecord(st.M, st.n, st.t, phase))
        if phase is Phase.PARTITIONING:
            d, p = self.params.delta, self.params.p
            if st.n < d:
                raise ConfigError(f"{st.n} uses left, fewer than a subblock of {d}")
            self._lay = partition_layout(st.M, d, p)
            self._seg = self._lay.locate(st.idx)
            addr = unrank_value(self._seg[0], d, p)
            self._pending = [(addr >> (d - 1 - i)) & 1 for i in range(d)]
            self._sub_sent, self._sub_recv = [], []
        elif phase is Phase.UNCODED:
            width = (st.M - 1).bit_length()
            if width > st.n:
                raise ConfigError(f"{width} index bits do not fit in {st.n} uses")
            self._pending = [(st.idx >> (width - 1 - i)) & 1 for i in range(width)]
            self._pending.reverse()
        elif phase is Phase.WEIGHT:
            self._ones = 0

    def next_bit(self, feedback: Optional[int] = None) -> int:
        if feedback is not None:
            self.observe(feedback)
        if self._awaiting:
            raise RuntimeError("feedback for the previous symbol is missing")
        if self.finished:
            raise RuntimeError("all channel uses already spent")
        phase = self.state.phase
        if phase is Phase.PARTITIONING:
            bit = self._pending[len(self._sub_sent)]
        elif phase is Phase.WEIGHT:
            bit = 1 if self._ones < self.state.idx else 0
        elif phase is Phase.UNCODED:
            bit = self._pending.pop() if self._pending else 0
        else:
            raise RuntimeError("session is over")
        self._last = bit
        self._awaiting = True
        return bit

    def observe(self, received: int):
        """Noiseless feedback of the channel output for the last symbol."""
        if not self._awaiting:
            raise RuntimeError("no symbol awaiting feedback")
        if received > self._last:
            raise ChannelContractError("0 -> 1 transition reported")
        self._awaiting = False
        self.used += 1
        st = self.state
        if received < self._last:
            self.flips += 1
        if st.phase is Phase.PARTITIONING:
            self._sub_sent.append(self._last)
            self._sub_recv.append(received)
            if len(self._sub_sent) == self.params.delta:
                self._close_subblock()
            return
        st.n -= 1
        if received < self._last:
            st.t -= 1
            if st.t < 0:
                raise ChannelContractError("error budget exceeded")
        if st.phase is Phase.WEIGHT:
            self._ones += received
        if self.finished:
            st.phase = Phase.DONE

    def _close_subblock(self):
        st = self.state
        d, p = self.params.delta, self.params.p
        recv = bits_to_int(self._sub_recv)
        e = p - recv.bit_count()
        if e > st.t:
            raise ChannelContractError("error budget exceeded")
        st.idx, st.M = update_value(st.idx, st.M, recv, d, p, self._lay, self._seg)
        st.t -= e
        st.n -= d
        self._enter()

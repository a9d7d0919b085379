"""Shared domain types: code parameters, session state and transcripts."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from . import bounds
from .numerics import binomial


class ConfigError(ValueError):
    """Parameters that cannot drive a session."""


class ChannelContractError(RuntimeError):
    """A received word no admissible Z-channel adversary could have produced."""


class Phase(enum.Enum):
    PARTITIONING = "partitioning"
    WEIGHT = "weight"
    UNCODED = "uncoded"
    DONE = "done"


def dispatch(M: int, n: int, t: int) -> Phase:
    """Phase selection at a subblock boundary; ``t == 0`` is tested first."""
    if t == 0:
        return Phase.UNCODED
    if M <= n - t + 1:
        return Phase.WEIGHT
    return Phase.PARTITIONING


@dataclass(frozen=True)
class CodeParams:
    """Parameter bundle for the three-phase scheme.

    With ``validate=True`` every construction invariant is enforced, including
    ``M <= guarantee``.  Hand-built configurations (weight-only sessions,
    stretched message counts, mutation fixtures) pass ``validate=False`` and
    keep only the basic shape checks.
    """

    delta: int
    p: int
    eps: Fraction
    A: int
    k: int
    n: int
    t: int
    M: int
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not 0 < self.p < self.delta:
            raise ConfigError(f"need 0 < p < delta, got p={self.p}, delta={self.delta}")
        if min(self.A, self.k, self.n, self.t) < 0:
            raise ConfigError("A, k, n, t must be non-negative")
        if self.M < 1:
            raise ConfigError("message space must be non-empty")
        if self.validate:
            self._check_construction()

    def _check_construction(self):
        if not 0 < self.eps < 1:
            raise ConfigError(f"eps={self.eps} outside (0, 1)")
        if self.A != bounds.tail_length(self.delta, self.p, self.eps):
            raise ConfigError(f"A={self.A} != ceil(C(delta,p)/eps)")
        if self.n != self.A + self.delta * self.k:
            raise ConfigError(f"n={self.n} != A + delta*k = {self.A + self.delta * self.k}")
        if self.delta * self.k < self.t:
            raise ConfigError(f"delta*k={self.delta * self.k} < t={self.t}")
        # gamma_e decreases in e, so e = p - 1 is the binding case
        if min(self.gammas[:-1]) <= 1:
            raise ConfigError(f"eps={self.eps} too large: need eps < 1 - p/delta")
        g = bounds.lemma2_guarantee(self)
        if self.M > g:
            raise ConfigError(f"M={self.M} exceeds the guaranteed count {g}")

    @property
    def gammas(self) -> list[Fraction]:
        return bounds.gammas(self.delta, self.p, self.eps)

    @property
    def addresses(self) -> int:
        return binomial(self.delta, self.p)

    @classmethod
    def build(cls, delta: int, p: int, eps, k: int, t: int, M: Optional[int] = None) -> "CodeParams":
        """Derive ``A`` and ``n``; ``M`` defaults to the guaranteed count."""
        eps = Fraction(eps)
        A = bounds.tail_length(delta, p, eps)
        if M is None:
            try:
                M = bounds.guarantee(delta, p, eps, A, k, t)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        return cls(delta, p, eps, A, k, A + delta * k, t, M)

    @classmethod
    def weight_only(cls, n: int, t: int) -> "CodeParams":
        """``n - t + 1`` messages, sent by the Weight algorithm alone."""
        if not 0 <= t < n:
            raise ConfigError("weight-only sessions need 0 <= t < n")
        return cls(2, 1, Fraction(2, n), n, 0, n, t, n - t + 1, validate=False)

    def describe(self) -> str:
        return (f"delta={self.delta} p={self.p} eps={self.eps} A={self.A} k={self.k} "
                f"n={self.n} t={self.t} M={self.M}")


@dataclass
class SessionState:
    """Bookkeeping shared by encoder and decoder.  ``idx`` is ``None`` on the
    receiving side."""

    M: int
    n: int
    t: int
    phase: Phase
    idx: Optional[int] = None

    def check(self):
        if self.idx is not None and not 0 <= self.idx < self.M:
            raise AssertionError(f"idx={self.idx} outside [0, {self.M})")
        if self.t < 0 or self.n < 0:
            raise AssertionError("negative budget or length")


@dataclass(frozen=True, slots=True)
class Record:
    step: int
    sent: int
    received: int
    phase: Phase

    @property
    def flipped(self) -> bool:
        return self.sent == 1 and self.received == 0

    def to_line(self) -> str:
        return f"{self.step},{self.sent},{self.received},{self.phase.value}"

    @classmethod
    def from_line(cls, line: str) -> "Record":
        step, sent, received, phase = line.strip().split(",")
        return cls(int(step), int(sent), int(received), Phase(phase))


@dataclass
class Transcript:
    """Per-symbol log of a session.  Rejects 0 -> 1 transitions and, when a
    budget is given, more than ``budget`` flips."""

    records: list[Record] = field(default_factory=list)
    budget: Optional[int] = None
    flips: int = field(default=0, init=False)

    def __post_init__(self):
        records, self.records = self.records, []
        for r in records:
            self.append(r)

    def append(self, record: Record):
        if record.sent not in (0, 1) or record.received not in (0, 1):
            raise ValueError(f"non-binary symbol in {record}")
        if record.received > record.sent:
            raise ValueError(f"step {record.step}: 0 -> 1 is impossible on the Z-channel")
        flips = self.flips + record.flipped
        if self.budget is not None and flips > self.budget:
            raise ValueError(f"more than {self.budget} flips")
        self.records.append(record)
        self.flips = flips

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[Record]:
        return iter(self.records)

    @property
    def sent(self) -> list[int]:
        return [r.sent for r in self.records]

    @property
    def received(self) -> list[int]:
        return [r.received for r in self.records]

    def dumps(self) -> str:
        return "".join(r.to_line() + "\n" for r in self.records)

    @classmethod
    def loads(cls, text: str, budget: Optional[int] = None) -> "Transcript":
        return cls([Record.from_line(l) for l in text.splitlines() if l.strip()], budget)

    @classmethod
    def from_records(cls, records: Iterable[Record], budget: Optional[int] = None) -> "Transcript":
        return cls(list(records), budget)

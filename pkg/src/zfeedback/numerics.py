"""Exact combinatorics, binary entropy and the constant-weight address codec.

Addresses are length-``delta`` bit strings with exactly ``p`` ones.  They are
ordered by ascending numeric value, reading the leftmost (first transmitted)
bit as the most significant one.  Ranking uses the combinatorial number
system; the few words a fixed ``delta`` produces are memoised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence


def entropy(x: float) -> float:
    """Binary entropy in bits, with ``0 * log 0 = 0``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x!r} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


@lru_cache(maxsize=None)
def binomial(u: int, v: int) -> int:
    """Exact binomial coefficient; 0 when ``v > u``."""
    if u < 0 or v < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(u, v)


def bits_to_int(bits: Iterable[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def int_to_bits(value: int, length: int) -> tuple[int, ...]:
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))


def parse_bits(text: str) -> tuple[int, ...]:
    if any(c not in "01" for c in text):
        raise ValueError(f"not a bit string: {text!r}")
    return tuple(int(c) for c in text)


def format_bits(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


@dataclass(frozen=True)
class CwAddress:
    """A constant-weight address word."""

    bits: tuple[int, ...]
    weight: int

    def __post_init__(self):
        delta = len(self.bits)
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("address bits must be 0 or 1")
        if not 0 < self.weight < delta:
            raise ValueError(f"need 0 < p < delta, got p={self.weight}, delta={delta}")
        if sum(self.bits) != self.weight:
            raise ValueError(f"address {format_bits(self.bits)} does not have weight {self.weight}")

    @classmethod
    def from_str(cls, text: str) -> "CwAddress":
        bits = parse_bits(text)
        return cls(bits, sum(bits))

    @property
    def delta(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return bits_to_int(self.bits)

    def __str__(self) -> str:
        return format_bits(self.bits)


@lru_cache(maxsize=1 << 16)
def rank_value(value: int) -> int:
    """Rank of the integer-coded word ``value`` among words of equal weight.

    The ``i``-th lowest set bit at position ``c`` contributes ``C(c, i)``.
    """
    rank = 0
    i = 0
    pos = 0
    while value:
        if value & 1:
            i += 1
            rank += binomial(pos, i)
        value >>= 1
        pos += 1
    return rank


def unrank_value(rank: int, delta: int, p: int) -> int:
    """Inverse of :func:`rank_value` for words of length ``delta`` and weight ``p``."""
    total = binomial(delta, p)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    value = 0
    remaining = p
    for pos in range(delta - 1, -1, -1):
        if remaining == 0:
            break
        c = binomial(pos, remaining)
        if rank >= c:
            value |= 1 << pos
            rank -= c
            remaining -= 1
    return value


@lru_cache(maxsize=1 << 16)
def superset_ranks(received: int, delta: int, p: int) -> tuple[int, ...]:
    """Ranks of :func:`superset_values`, in the same (ascending) order."""
    return tuple(rank_value(v) for v in superset_values(received, delta, p))


def cw_rank(a: CwAddress) -> int:
    return rank_value(a.value)


def cw_unrank(r: int, delta: int, p: int) -> CwAddress:
    if not 0 < p < delta:
        raise ValueError(f"need 0 < p < delta, got p={p}, delta={delta}")
    return CwAddress(int_to_bits(unrank_value(r, delta, p), delta), p)


def superset_values(received: int, delta: int, p: int) -> list[int]:
    """Integer-coded weight-``p`` words covering ``received``, ascending."""
    w = received.bit_count()
    if w > p:
        raise ValueError(f"received weight {w} exceeds address weight {p}")
    zeros = [pos for pos in range(delta) if not (received >> pos) & 1]
    out = []
    for chosen in combinations(zeros, p - w):
        v = received
        for pos in chosen:
            v |= 1 << pos
        out.append(v)
    out.sort()
    return out


def cw_supersets(received: Sequence[int], p: int) -> list[CwAddress]:
    """All weight-``p`` addresses bitwise above ``received``, in rank order."""
    delta = len(received)
    if not 0 < p < delta:
        raise ValueError(f"need 0 < p < delta, got p={p}, delta={delta}")
    values = superset_values(bits_to_int(received), delta, p)
    return [CwAddress(int_to_bits(v, delta), p) for v in values]

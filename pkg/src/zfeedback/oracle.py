"""Exact ``M(n, t)`` for small instances via the half-lie game.

The questioner (encoder) asks "is the message in A?"; the responder may
answer "no" when the truth is "yes" at most ``t`` times.  A "yes" answer is
always truthful, so unqueried candidates die; a "no" answer keeps unqueried
candidates and charges one lie to the queried ones.

Internally a position is a vector ``z`` where ``z[l]`` counts candidates with
``l`` lies *left*.  With ``q`` questions left, every candidate holding at least
``q`` lies is equivalent, so those classes are merged, and the memo table is
shared across different ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .channel import iter_leaves
from .core import CodeParams

_memo: dict[tuple[tuple[int, ...], int], bool] = {}


class OracleLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class GameState:
    """``x[e]`` candidates have been charged ``e`` lies; ``q`` questions remain."""

    x: tuple[int, ...]
    q: int

    def __post_init__(self):
        if not self.x or any(c < 0 for c in self.x) or self.q < 0:
            raise ValueError(f"bad game state {self}")

    @property
    def t(self) -> int:
        return len(self.x) - 1

    @property
    def candidates(self) -> int:
        return sum(self.x)


def _canon(z, q: int) -> tuple[int, ...]:
    z = list(z)
    if len(z) > q + 1:
        z[q] += sum(z[q + 1:])
        del z[q + 1:]
    while len(z) > 1 and z[-1] == 0:
        z.pop()
    return tuple(z)


def _win(z: tuple[int, ...], q: int) -> bool:
    s = sum(z)
    if s <= 1:
        return True
    if q == 0 or s > 1 << q:
        return False
    if len(z) == q + 1 and z[q] >= 2:
        # two candidates able to lie on every remaining question share the all-"no" answer
        return False
    key = (z, q)
    hit = _memo.get(key)
    if hit is None:
        hit = _memo[key] = _search(z, q)
    return hit


def _child_win(v, q: int) -> bool:
    return _win(_canon(v, q), q)


def _search(z: tuple[int, ...], q: int) -> bool:
    L = len(z) - 1
    q1 = q - 1
    a = [0] * (L + 1)

    def pair_ok(a0: int) -> tuple[bool, bool]:
        a[0] = a0
        yes = a
        no = [z[l] - a[l] + (a[l + 1] if l < L else 0) for l in range(L + 1)]
        return _child_win(yes, q1), _child_win(no, q1)

    def last_coordinate() -> bool:
        # "yes" child grows with a[0], "no" child shrinks: binary search the window
        lo, hi = 0, z[0]
        y_ok, n_ok = pair_ok(0)
        if not y_ok:
            return False
        if n_ok:
            return True
        y_ok, n_ok = pair_ok(hi)
        if n_ok:
            if y_ok:
                return True
            # smallest a0 with a winnable "no" child
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if pair_ok(mid)[1]:
                    hi = mid
                else:
                    lo = mid
            return pair_ok(hi)[0]
        return False

    def assign(l: int) -> bool:
        if l == 0:
            return last_coordinate()
        for v in _centre_out(z[l]):
            a[l] = v
            # optimistic completion of the lower coordinates
            for j in range(l):
                a[j] = 0
            if not _child_win(a, q1):
                continue
            no_lb = [0] * (L + 1)
            for j in range(l, L + 1):
                no_lb[j] = z[j] - a[j] + (a[j + 1] if j < L else 0)
            no_lb[l - 1] = a[l]
            if not _child_win(no_lb, q1):
                continue
            if assign(l - 1):
                return True
        a[l] = 0
        return False

    return assign(L)


def _centre_out(c: int):
    mid = c // 2
    yield mid
    for d in range(1, c + 1):
        if mid + d <= c:
            yield mid + d
        if mid - d >= 0:
            yield mid - d


def winnable(s: GameState, limit: int = 1 << 12) -> bool:
    """True iff the questioner can isolate the answer within ``s.q`` questions."""
    if s.candidates > limit:
        raise OracleLimitError(f"{s.candidates} candidates exceed limit {limit}")
    lies_left = tuple(reversed(s.x))
    return _win(_canon(lies_left, s.q), s.q)


def max_messages(n: int, t: int, limit: int = 1 << 12) -> int:
    """Largest ``M`` with a successful feedback strategy of length ``n``
    against ``t`` asymmetric errors."""

    def ok(M: int) -> bool:
        x = (M,) + (0,) * t
        return winnable(GameState(x, n), limit=max(limit, M))

    if (1 << n) > limit:
        raise OracleLimitError(f"n={n} exceeds the search limit")
    lo, hi = 1, 2
    while hi <= (1 << n) and ok(hi):
        lo, hi = hi, hi * 2
    hi = min(hi, (1 << n) + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def asymptotic_estimate(n: int, t: int) -> float:
    """``2^(n+t) t! / n^t``, the fixed-``t`` leading term (for display only)."""
    return 2.0 ** (n + t) * math.factorial(t) / float(n) ** t


def enumerate_outputs(params: CodeParams, m: int, max_n: int = 20) -> set[str]:
    """Every channel output reachable from message ``m``."""
    if params.n > max_n:
        raise OracleLimitError(f"n={params.n} exceeds enumeration guard {max_n}")
    return {"".join(map(str, word)) for word, _ in iter_leaves(params, m)}


def outputs_disjoint(params: CodeParams, max_n: int = 20) -> bool:
    """Pairwise disjointness of the output sets of all messages."""
    sets = [enumerate_outputs(params, m, max_n) for m in range(params.M)]
    return all(not (a & b) for a, b in combinations(sets, 2))


def clear_cache():
    _memo.clear()

"""Slow, independent reference implementations used to derive frozen test values.

None of these share code with the package beyond the standard library.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product


def h2(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def _feasible(v: float, tau: float, tp: float) -> bool:
    if v == 0.0:
        return True
    arg = min((tau - tp) / (v * (1 - tp)), 0.5)
    return h2(v) <= 1 - v * h2(arg)


def _largest_v(tau: float, tp: float) -> float:
    # coarse scan from the top, then a fine scan inside the winning cell
    coarse = 0.0
    for i in range(500, -1, -1):
        v = i * 1e-3
        if _feasible(v, tau, tp):
            coarse = v
            break
    best = coarse
    for i in range(1, 1001):
        v = coarse + i * 1e-6
        if v > 0.5:
            break
        if _feasible(v, tau, tp):
            best = v
    return best


def upper_rate_scan(tau: float) -> float:
    """Two-level grid scan over (tau', v); no bisection, no ternary search."""

    def rate(tp):
        return h2(_largest_v(tau, tp)) * (1 - tp)

    steps = int(round(tau / 1e-3))
    pts = [min(i * 1e-3, tau) for i in range(steps + 1)]
    vals = [rate(tp) for tp in pts]
    j = min(range(len(vals)), key=vals.__getitem__)
    lo, hi = max(0.0, pts[j] - 2e-3), min(tau, pts[j] + 2e-3)
    fine = [lo + i * 1e-5 for i in range(int(round((hi - lo) / 1e-5)) + 1)]
    return min([vals[j]] + [rate(tp) for tp in fine])


def max_messages_sets(n: int, t: int) -> int:
    """M(n, t) by search over explicit candidate sets (tiny n only).

    A position is a frozenset of (message, flips used); the encoder chooses for
    each candidate whether to send 1, and the answer splits the set.
    """

    @lru_cache(maxsize=None)
    def win(cands: frozenset, q: int) -> bool:
        if len({m for m, _ in cands}) <= 1:
            return True
        if q == 0:
            return False
        items = sorted(cands)
        msgs = sorted({m for m, _ in items})
        for mask in product((0, 1), repeat=len(msgs)):
            send = dict(zip(msgs, mask))
            yes = frozenset((m, e) for m, e in items if send[m])
            no = frozenset([(m, e) for m, e in items if not send[m]]
                           + [(m, e + 1) for m, e in items if send[m] and e < t])
            if win(yes, q - 1) and win(no, q - 1):
                return True
        return False

    M = 1
    while M < (1 << n) and win(frozenset((m, 0) for m in range(M + 1)), n):
        M += 1
    return M

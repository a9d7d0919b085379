"""Finite-length message-count guarantees and asymptotic rate bounds.

The finite-length guarantee is ``floor(A * min prod gamma_e ** k_e)`` where the
minimum runs over error distributions ``(k_0, ..., k_p)`` of ``k`` subblocks
with ``sum(e * k_e) <= t + p``.  Two exact solvers are provided: a dynamic
program over (subblocks assigned, error budget used) and a balanced
allocation, which is optimal because ``log gamma_e`` is convex and
decreasing in ``e`` whenever ``gamma_{p-1} > 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .numerics import binomial, entropy


# ---------------------------------------------------------------------------
# Finite-length guarantee
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ErrorDistribution:
    """Number of subblocks ``k_e`` hit by exactly ``e`` errors, ``e = 0..p``."""

    counts: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.counts) - 1

    @property
    def blocks(self) -> int:
        return sum(self.counts)

    @property
    def errors(self) -> int:
        return sum(e * c for e, c in enumerate(self.counts))

    def admissible(self, k: int, t: int) -> bool:
        return self.blocks == k and self.errors <= t + self.p

    def product(self, gammas: Sequence[Fraction]) -> Fraction:
        out = Fraction(1)
        for g, c in zip(gammas, self.counts):
            if c:
                out *= g ** c
        return out


def gammas(delta: int, p: int, eps: Fraction) -> list[Fraction]:
    """Per-subblock growth factors; ``gamma_p`` is 1 by definition."""
    eps = Fraction(eps)
    c = binomial(delta, p)
    out = [(1 - eps) * Fraction(c, binomial(delta - p + e, e)) for e in range(p)]
    out.append(Fraction(1))
    return out


def tail_length(delta: int, p: int, eps: Fraction) -> int:
    """``A = ceil(C(delta, p) / eps)``."""
    eps = Fraction(eps)
    q = Fraction(binomial(delta, p)) / eps
    return math.ceil(q)


def error_distributions(k: int, t: int, p: int) -> Iterator[ErrorDistribution]:
    """Brute-force enumeration of every admissible error distribution."""
    for head in product(range(k + 1), repeat=p):
        rest = k - sum(head)
        if rest < 0:
            continue
        d = ErrorDistribution(head + (rest,))
        if d.errors <= t + p:
            yield d


def min_product_bruteforce(delta: int, p: int, eps: Fraction, k: int, t: int) -> Fraction:
    g = gammas(delta, p, eps)
    return min(d.product(g) for d in error_distributions(k, t, p))


def min_product_dp(delta: int, p: int, eps: Fraction, k: int, t: int) -> Fraction:
    """Exact DP: ``best[b]`` is the smallest product over the blocks assigned
    so far using exactly ``b`` errors.  The budget cap is ``t + p``."""
    g = gammas(delta, p, eps)
    cap = t + p
    best: list[Fraction | None] = [None] * (cap + 1)
    best[0] = Fraction(1)
    for _ in range(k):
        nxt: list[Fraction | None] = [None] * (cap + 1)
        for b, val in enumerate(best):
            if val is None:
                continue
            for e in range(min(p, cap - b) + 1):
                cand = val * g[e]
                cur = nxt[b + e]
                if cur is None or cand < cur:
                    nxt[b + e] = cand
        best = nxt
    return min(v for v in best if v is not None)


def balanced_distribution(k: int, t: int, p: int) -> ErrorDistribution:
    """Spread ``min(t + p, k p)`` errors as evenly as possible over ``k`` blocks."""
    counts = [0] * (p + 1)
    if k == 0:
        return ErrorDistribution(tuple(counts))
    q, r = divmod(min(t + p, k * p), k)
    counts[q] += k - r
    if r:
        counts[q + 1] += r
    return ErrorDistribution(tuple(counts))


def min_product_balanced(delta: int, p: int, eps: Fraction, k: int, t: int) -> Fraction:
    # optimal only while gamma_e > 1 for every e < p
    g = gammas(delta, p, eps)
    if g[p - 1] <= 1:
        raise ValueError("balanced allocation needs gamma_{p-1} > 1")
    return balanced_distribution(k, t, p).product(g)


_MIN_PRODUCT = {
    "balanced": min_product_balanced,
    "dp": min_product_dp,
    "bruteforce": min_product_bruteforce,
}


def guarantee(delta: int, p: int, eps: Fraction, A: int, k: int, t: int,
              method: str = "balanced") -> int:
    """``floor(A * min over S(k, t, p) of prod gamma_e ** k_e)``."""
    try:
        solver = _MIN_PRODUCT[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return math.floor(A * solver(delta, p, Fraction(eps), k, t))


def lemma2_guarantee(params, method: str = "balanced") -> int:
    """Guaranteed message count for a parameter bundle (duck-typed ``CodeParams``)."""
    return guarantee(params.delta, params.p, params.eps, params.A, params.k,
                     params.t, method=method)


def closed_form_log2(delta: int, p: int, eps: Fraction, A: int, k: int, t: int) -> float:
    """log2 of ``A (1-eps)^k C(delta,p)^k / C(delta k - p k + t + p, t + p)``."""
    eps = Fraction(eps)
    return (math.log2(A) + k * math.log2(1 - eps) + k * math.log2(binomial(delta, p))
            - math.log2(binomial(delta * k - p * k + t + p, t + p)))


def lemma2_closed_form(params) -> float:
    """The weaker closed-form guarantee, evaluated in log space.

    Returns ``inf`` when the value exceeds the float range.
    """
    lg = closed_form_log2(params.delta, params.p, params.eps, params.A, params.k, params.t)
    try:
        return 2.0 ** lg - 1.0
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# Asymptotic rates
# ---------------------------------------------------------------------------

def lower_rate(tau: float) -> float:
    """Rate achieved by the three-phase construction at error fraction ``tau``."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau={tau!r} outside [0, 1]")
    a = 1.0 + tau
    xlogx = tau * math.log2(tau) if tau > 0 else 0.0
    return a - a * math.log2(a) + xlogx


def packing_slack(v: float, tau: float, tau_p: float) -> float:
    """``1 - h(v) - v h(min((tau - tau') / (v (1 - tau')), 1/2))``.

    Non-negative exactly when ``v`` is admissible; strictly decreasing in ``v``.
    """
    if v <= 0.0:
        return 1.0
    arg = (tau - tau_p) / (v * (1.0 - tau_p))
    arg = min(max(arg, 0.0), 0.5)
    return 1.0 - entropy(v) - v * entropy(arg)


def largest_admissible_v(tau: float, tau_p: float, tol: float = 1e-12) -> float:
    if packing_slack(0.5, tau, tau_p) >= 0.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if packing_slack(mid, tau, tau_p) >= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def inner_rate(tau: float, tau_p: float) -> float:
    """Largest ``r = h(v) (1 - tau')`` over admissible ``v``."""
    return entropy(largest_admissible_v(tau, tau_p)) * (1.0 - tau_p)


def upper_rate(tau: float, grid_step: float = 1e-3, tol: float = 1e-10) -> float:
    """Sphere-packing upper bound: min over ``tau'`` in ``[0, tau]`` of :func:`inner_rate`.

    Coarse grid over ``tau'`` followed by ternary search around the best cell.
    """
    if not 0.0 < tau < 1.0:
        raise ValueError(f"tau={tau!r} outside (0, 1)")
    steps = max(2, math.ceil(tau / grid_step))
    grid = [tau * i / steps for i in range(steps + 1)]
    values = [inner_rate(tau, x) for x in grid]
    i = min(range(len(values)), key=values.__getitem__)
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, steps)]
    best = values[i]
    while hi - lo > tol:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        f1, f2 = inner_rate(tau, m1), inner_rate(tau, m2)
        best = min(best, f1, f2)
        if f1 <= f2:
            hi = m2
        else:
            lo = m1
    return best


@dataclass
class RateCurve:
    samples: list[tuple[float, float, float]] = field(default_factory=list)

    def __post_init__(self):
        for tau, lo, up in self.samples:
            if lo > up + 1e-9:
                raise ValueError(f"lower bound {lo} exceeds upper bound {up} at tau={tau}")

    def __len__(self) -> int:
        return len(self.samples)

    def to_csv(self) -> str:
        lines = ["tau,lower,upper"]
        lines += [f"{t:.9g},{lo:.9g},{up:.9g}" for t, lo, up in self.samples]
        return "\n".join(lines) + "\n"


def emit_curve(tau_grid: Sequence[float]) -> RateCurve:
    samples = []
    for tau in tau_grid:
        if not 0.0 < tau < 1.0:
            raise ValueError(f"grid point {tau!r} outside (0, 1)")
        samples.append((float(tau), lower_rate(tau), upper_rate(tau)))
    return RateCurve(samples)

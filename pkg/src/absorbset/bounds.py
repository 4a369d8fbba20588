"""Closed-form quantities of the probabilistic construction, evaluated in log space.

For a candidate set ``S`` of size ``p - 1`` and the bag ``S`` misses, every vertex
of that bag must send an arc into ``S``, which happens with probability
``1 - 2**-(p-1)`` independently per vertex. Summing over all ``C(mp, p-1)``
candidate sets gives the union bound; the relaxed bound follows from
``C(a, k) <= (e a / k)**k`` and ``1 + x <= e**x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

MAX_N = 64
MAX_SCAN_P = 1000
CERTAIN_ZERO = float("-inf")
"""Log of an event with probability exactly zero; orders below every real."""

Bound = Literal["union", "relaxed"]


def binomial(a: int, b: int) -> int:
    """Exact ``C(a, b)`` by Pascal's recurrence (one row at a time)."""
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    row = [1] + [0] * b
    for i in range(1, a + 1):
        for j in range(min(i, b), 0, -1):
            row[j] += row[j - 1]
    return row[b]


def family_size(n: int) -> int:
    """``p = C(n - 1, floor((n - 1) / 2))``, the number of bags."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_N:
        raise ValueError(f"n must be <= {MAX_N} so that p fits in 64 bits, got {n}")
    return binomial(n - 1, (n - 1) // 2)


def log_binomial(a: int, b: int) -> float:
    """``ln C(a, b)`` as a sum of ``ln((a - b + i) / i)`` terms."""
    if b < 0 or b > a:
        return CERTAIN_ZERO
    b = min(b, a - b)
    return math.fsum(math.log((a - b + i) / i) for i in range(1, b + 1))


def union_bound_log(p: int, m: int) -> float:
    """``ln[C(mp, p-1) * (1 - 2**-(p-1))**m]``; ``CERTAIN_ZERO`` when ``p == 1``."""
    _check(p, m)
    if p == 1:
        return CERTAIN_ZERO
    return log_binomial(m * p, p - 1) + m * math.log1p(-(2.0 ** -(p - 1)))


def relaxed_bound_log(p: int, m: int) -> float:
    """``(p-1)(1 + ln(mp/(p-1))) - m 2**-(p-1)``; the power term is 1 when ``p == 1``."""
    _check(p, m)
    tail = m * 2.0 ** -(p - 1)
    if p == 1:
        return -tail
    return (p - 1) * (1.0 + math.log(m * p / (p - 1))) - tail


def _check(p: int, m: int) -> None:
    if p < 1 or m < 1:
        raise ValueError(f"need p >= 1 and m >= 1, got p={p}, m={m}")


_BOUNDS = {"union": union_bound_log, "relaxed": relaxed_bound_log}


def minimal_m(p: int, bound: Bound = "union") -> int:
    """Least ``m >= 1`` at which the chosen bound's log drops below zero.

    Both bounds are concave in ``m`` and non-negative at ``m = 1`` for ``p >= 2``,
    so once negative they stay negative: doubling finds a bracket, bisection
    the crossing.
    """
    try:
        f = _BOUNDS[bound]
    except KeyError:
        raise ValueError(f"unknown bound {bound!r}; expected 'union' or 'relaxed'") from None
    if p > MAX_SCAN_P:
        raise ValueError(f"p={p} too large: the threshold m exceeds float range (limit p <= {MAX_SCAN_P})")
    if f(p, 1) < 0:
        return 1
    lo, hi = 1, 2
    while f(p, hi) >= 0:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(p, mid) < 0:
            hi = mid
        else:
            lo = mid
    return hi


def stirling_ratio(n: int) -> float:
    """``p(n) * sqrt(n) / 2**n``; tends to ``1 / sqrt(2 pi)``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return math.exp(math.log(family_size(n)) + 0.5 * math.log(n) - n * math.log(2.0))


@dataclass(frozen=True)
class BoundReport:
    p: int
    m: int
    log_union_bound: float
    log_relaxed_bound: float

    @property
    def certifies_existence(self) -> bool:
        return self.log_union_bound < 0


def bound_report(p: int, m: int) -> BoundReport:
    return BoundReport(p, m, union_bound_log(p, m), relaxed_bound_log(p, m))

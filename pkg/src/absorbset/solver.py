"""Exact minimum absorbing sets as set cover over the coverage sets ``A(y)``.

Coverage sets are Python ints used as bitsets. The branch-and-bound branches on
the uncovered vertex with the fewest covering candidates and tries those
candidates in ascending order; candidates tried in earlier sibling branches are
excluded from later ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .absorption import AbsorptionRelation, is_absorbing

DEFAULT_NODE_BUDGET = 50_000_000
BRUTE_FORCE_LIMIT = 20


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    witness: tuple[int, ...]
    nodes_explored: int
    proved_optimal: bool
    budget_exhausted: bool = False


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def greedy_upper_bound(rel: AbsorptionRelation) -> tuple[int, ...]:
    """Greedy cover: take the candidate covering most uncovered vertices, lowest id on ties."""
    if rel.vertex_count < 1:
        raise ValueError("empty tournament")
    uncovered, chosen = rel.full, []
    while uncovered:
        best = max(range(rel.vertex_count),
                   key=lambda y: ((rel.coverage[y] & uncovered).bit_count(), -y))
        chosen.append(best)
        uncovered &= ~rel.coverage[best]
    return tuple(sorted(chosen))


class _Search:
    def __init__(self, rel: AbsorptionRelation, budget: Optional[int]):
        self.cover = rel.coverage
        self.N = rel.vertex_count
        self.full = rel.full
        self.budget = budget
        self.nodes = 0
        # candidates[x]: bitset of the y with x in A(y)
        self.candidates = [0] * self.N
        for y, mask in enumerate(self.cover):
            for x in _bits(mask):
                self.candidates[x] |= 1 << y
        self.best_size = 0
        self.best: Optional[list[int]] = None
        self.stop_on_first = False

    def run(self, limit: int, stop_on_first: bool) -> None:
        """Look for covers of size < ``limit``."""
        self.best_size = limit
        self.stop_on_first = stop_on_first
        self._node(self.full, [], 0)

    def _node(self, uncovered: int, chosen: list[int], excluded: int) -> bool:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhausted(self.nodes - 1)
        if not uncovered:
            self.best_size = len(chosen)
            self.best = list(chosen)
            return self.stop_on_first
        room = self.best_size - len(chosen)
        if room <= 0:
            return False
        # pick the uncovered vertex with the fewest usable candidates
        usable = ~excluded
        branch_ys, fewest = 0, self.N + 1
        for x in _bits(uncovered):
            ys = self.candidates[x] & usable
            count = ys.bit_count()
            if count == 0:
                return False
            if count < fewest:
                branch_ys, fewest = ys, count
                if count == 1:
                    break
        widest = max((self.cover[y] & uncovered).bit_count()
                     for y in _bits(self.full & usable))
        need = -(-uncovered.bit_count() // widest)
        if len(chosen) + need >= self.best_size:
            return False
        for y in _bits(branch_ys):
            chosen.append(y)
            done = self._node(uncovered & ~self.cover[y], chosen, excluded)
            chosen.pop()
            if done:
                return True
            if len(chosen) + 1 >= self.best_size:
                return False
            excluded |= 1 << y
        return False


def min_absorbing_set_exact(rel: AbsorptionRelation,
                            node_budget: Optional[int] = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Minimum absorbing set by branch-and-bound, seeded with the greedy cover.

    On budget exhaustion the best cover found so far is returned with
    ``proved_optimal=False``.
    """
    greedy = greedy_upper_bound(rel)
    search = _Search(rel, node_budget)
    try:
        search.run(len(greedy), stop_on_first=False)
    except BudgetExhausted:
        best = tuple(sorted(search.best)) if search.best is not None else greedy
        return SolveResult(len(best), best, search.nodes - 1, False, True)
    best = tuple(sorted(search.best)) if search.best is not None else greedy
    return SolveResult(len(best), best, search.nodes, True, False)


def exists_absorbing_of_size(rel: AbsorptionRelation, k: int,
                             node_budget: Optional[int] = DEFAULT_NODE_BUDGET
                             ) -> tuple[bool, Optional[tuple[int, ...]], int]:
    """Decide whether an absorbing set of exactly ``k`` vertices exists.

    Returns ``(found, witness, nodes)``. Supersets of absorbing sets absorb, so
    a smaller cover is padded with the lowest unused ids. Raises
    ``BudgetExhausted`` rather than answering "no" when the search is cut off.
    """
    N = rel.vertex_count
    if not 0 <= k <= N:
        raise ValueError(f"k must lie in [0, {N}], got {k}")
    search = _Search(rel, node_budget)
    search.run(k + 1, stop_on_first=True)
    if search.best is None:
        return False, None, search.nodes
    chosen = set(search.best)
    for v in range(N):
        if len(chosen) >= k:
            break
        chosen.add(v)
    return True, tuple(sorted(chosen)), search.nodes


def min_absorbing_brute(rel: AbsorptionRelation) -> SolveResult:
    """Enumerate subsets by size, then lexicographically; the first absorbing one wins."""
    N = rel.vertex_count
    if N > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {N}")
    tried = 0
    for k in range(1, N + 1):
        for S in combinations(range(N), k):
            tried += 1
            if is_absorbing(rel, S):
                return SolveResult(k, S, tried, True, False)
    raise AssertionError("V itself always absorbs")

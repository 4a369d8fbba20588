"""Random bag construction: central-layer subsets, one bag per subset, ``m`` copies each.

Arcs inside a bag get colour ``n``; an arc from the bag of ``P`` to the bag of
``P'`` gets a colour drawn uniformly from ``P' - P``. Orientations are fair coins.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .rng import MASK64, SplitMix64
from .tournament import ColouredTournament

DEFAULT_MAX_VERTICES = 20_000


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    m: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ConstructionError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if not 0 <= self.seed <= MASK64:
            raise ConstructionError(f"seed {self.seed} is not a 64-bit unsigned integer")


@dataclass(frozen=True)
class BagLayout:
    """Ordered subset family and the bag-major vertex numbering.

    Vertex ``b * m + (i - 1)`` is copy ``i`` (1-based) of bag ``b``.
    """

    family: tuple[tuple[int, ...], ...]
    m: int
    _masks: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "family", tuple(tuple(s) for s in self.family))
        if self.m < 1 or not self.family:
            raise ConstructionError("layout needs m >= 1 and a non-empty family")
        if len(set(self.family)) != len(self.family):
            raise ConstructionError("family subsets must be pairwise distinct")
        masks = np.zeros(len(self.family), dtype=np.uint64)
        for b, subset in enumerate(self.family):
            if any(not 1 <= e <= 63 for e in subset):
                raise ConstructionError(f"subset {subset} has elements outside [1, 63]")
            masks[b] = sum(1 << e for e in subset)
        object.__setattr__(self, "_masks", masks)

    @property
    def p(self) -> int:
        return len(self.family)

    @property
    def vertex_count(self) -> int:
        return self.m * len(self.family)

    def vertex_of(self, copy: int, bag: int) -> int:
        if not 1 <= copy <= self.m or not 0 <= bag < self.p:
            raise IndexError(f"no vertex for copy {copy} of bag {bag}")
        return bag * self.m + copy - 1

    def bag_of(self, v: int) -> int:
        return v // self.m

    def copy_of(self, v: int) -> int:
        return v % self.m + 1

    def bag_array(self) -> np.ndarray:
        """Bag index of every vertex."""
        return np.repeat(np.arange(self.p), self.m)

    def bag_masks(self) -> np.ndarray:
        """Bit ``e`` of entry ``b`` is set iff ``e`` belongs to subset ``b``."""
        return self._masks

    def bag_vertices(self, bag: int) -> range:
        return range(bag * self.m, (bag + 1) * self.m)


def enumerate_family(n: int) -> list[tuple[int, ...]]:
    """All ``floor((n-1)/2)``-subsets of ``{1..n-1}`` in lexicographic order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return list(combinations(range(1, n), (n - 1) // 2))


def make_layout(n: int, m: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> BagLayout:
    from .bounds import family_size

    p = family_size(n)
    if m * p > max_vertices:
        raise ConstructionError(
            f"instance would have {m * p} vertices (p={p}, m={m}); cap is {max_vertices}")
    return BagLayout(tuple(enumerate_family(n)), m)


def generate(params: ConstructionParams,
             max_vertices: int = DEFAULT_MAX_VERTICES) -> tuple[ColouredTournament, BagLayout]:
    """Sample the random coloured tournament for ``(n, m, seed)``.

    Pairs ``u < v`` are visited in lexicographic order. Each takes one draw for
    the orientation (low bit 0 means ``u -> v``) and, for an inter-bag arc whose
    candidate set has two or more colours, one rejection-sampled colour index.
    """
    layout = make_layout(params.n, params.m, max_vertices)
    try:
        mat = _generate_vectorized(params, layout)
    except _Rejected:
        mat = _generate_reference(params, layout)
    return ColouredTournament(mat, params.n), layout


class _Rejected(Exception):
    pass


def _generate_reference(params: ConstructionParams, layout: BagLayout) -> np.ndarray:
    """Scalar draw-by-draw generation; defines the stream the fast path must match."""
    n, N = params.n, layout.vertex_count
    family = [frozenset(s) for s in layout.family]
    rng = SplitMix64(params.seed)
    mat = np.zeros((N, N), dtype=np.uint8)
    for u in range(N):
        bu = layout.bag_of(u)
        for v in range(u + 1, N):
            bv = layout.bag_of(v)
            tail, head = (u, v) if rng.next() & 1 == 0 else (v, u)
            if bu == bv:
                mat[tail, head] = n
                continue
            cands = sorted(family[layout.bag_of(head)] - family[layout.bag_of(tail)])
            mat[tail, head] = cands[0] if len(cands) == 1 else cands[rng.below(len(cands))]
    return mat


def _generate_vectorized(params: ConstructionParams, layout: BagLayout) -> np.ndarray:
    # Per row u the number of draws is fixed by the bags alone (|P'-P| = |P-P'|),
    # so each row's slice of the stream can be taken in one block.
    n, N = params.n, layout.vertex_count
    bags = layout.bag_array()
    masks = layout.bag_masks()
    rng = SplitMix64(params.seed)
    mat = np.zeros((N, N), dtype=np.uint8)
    two64 = 1 << 64
    # power-of-two sizes never reject
    limits = {s: two64 - (two64 % s) for s in range(2, 64) if two64 % s}
    for u in range(N - 1):
        vs = np.arange(u + 1, N)
        mu = masks[bags[u]]
        mv = masks[bags[vs]]
        s = np.bitwise_count(mv & ~mu).astype(np.int64)
        intra = bags[vs] == bags[u]
        need = s >= 2
        counts = 1 + need
        offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
        draws = rng.block(int(counts.sum()))
        forward = (draws[offsets] & np.uint64(1)) == 0
        colours = np.full(vs.size, n, dtype=np.int64)
        inter = ~intra
        if inter.any():
            head_mask = np.where(forward, mv, mu)
            tail_mask = np.where(forward, mu, mv)
            diff = head_mask & ~tail_mask
            index = np.zeros(vs.size, dtype=np.int64)
            if need.any():
                r = draws[offsets[need] + 1]
                sn = s[need]
                for size in np.unique(sn):
                    if int(size) in limits and (r[sn == size] >= np.uint64(limits[int(size)])).any():
                        raise _Rejected
                index[need] = (r % sn.astype(np.uint64)).astype(np.int64)
            colours[inter] = _kth_set_bit(diff[inter], index[inter], n)
        tails = np.where(forward, u, vs)
        heads = np.where(forward, vs, u)
        mat[tails, heads] = colours
    return mat


def _kth_set_bit(masks: np.ndarray, k: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(masks.size, dtype=np.int64)
    seen = np.zeros(masks.size, dtype=np.int64)
    for bit in range(1, n):
        has = ((masks >> np.uint64(bit)) & np.uint64(1)).astype(bool)
        hit = has & (seen == k)
        out[hit] = bit
        seen += has
    return out


class Violation(NamedTuple):
    rule: str
    detail: str


@dataclass
class StructureReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "structure ok"
        lines = [f"{len(self.violations)} violation(s)"]
        lines += [f"  ({v.rule}) {v.detail}" for v in self.violations]
        return "\n".join(lines)


def validate_structure(t: ColouredTournament, layout: BagLayout) -> StructureReport:
    """Check the colour rule of the bag construction.

    ``a``: arcs inside a bag have colour ``n``; ``b``: an arc from bag ``P`` to
    bag ``P'`` has its colour in ``P' - P``; ``c``: per bag, colours of incoming
    arcs, outgoing arcs and ``{n}`` are pairwise disjoint. Family mismatches with
    the central layer are reported as ``family``.
    """
    if layout.vertex_count != t.vertex_count:
        raise ValueError(
            f"layout describes {layout.vertex_count} vertices, tournament has {t.vertex_count}")
    report = StructureReport()
    n = t.colour_count
    if list(layout.family) != enumerate_family(n):
        report.violations.append(Violation(
            "family", f"family is not the lexicographic {(n - 1) // 2}-subsets of 1..{n - 1}"))

    mat = t.matrix.astype(np.int64)
    bags = layout.bag_array()
    same = bags[:, None] == bags[None, :]
    arcs = mat > 0
    for u, v in np.argwhere(arcs & same & (mat != n)):
        report.violations.append(Violation(
            "a", f"intra-bag arc {u}->{v} has colour {mat[u, v]}, expected {n}"))

    masks = layout.bag_masks()
    inter = arcs & ~same
    vmask = masks[bags]
    allowed_mask = vmask[None, :] & ~vmask[:, None]
    safe = np.clip(mat, 0, 63).astype(np.uint64)
    member = ((allowed_mask >> safe) & np.uint64(1)).astype(bool) & (mat < 64)
    for u, v in np.argwhere(inter & ~member):
        report.violations.append(Violation(
            "b", f"arc {u}->{v} from bag {bags[u]} to bag {bags[v]} has colour {mat[u, v]} "
                 f"outside {sorted(set(layout.family[bags[v]]) - set(layout.family[bags[u]]))}"))

    for b in range(layout.p):
        inside = bags == b
        incoming = set(np.unique(mat[~inside][:, inside][inter[~inside][:, inside]]).tolist())
        outgoing = set(np.unique(mat[inside][:, ~inside][inter[inside][:, ~inside]]).tolist())
        clash = (incoming & outgoing) | ((incoming | outgoing) & {n})
        if clash:
            report.violations.append(Violation(
                "c", f"bag {b}: colours {sorted(clash)} shared between in/out/intra arcs"))
    return report

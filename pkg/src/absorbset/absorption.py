"""Monochromatic reachability and the absorbed-by relation.

``x`` is absorbed by ``y`` when some colour has a directed path of length at
least one from ``x`` to ``y``. The coverage set ``A(y)`` is ``y`` together with
everything it absorbs, so absorbing sets are exactly covers of ``V`` by
coverage sets.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .construction import BagLayout, validate_structure
from .tournament import ColouredTournament


class StructureError(ValueError):
    pass


def _to_bitmasks(cols: np.ndarray) -> list[int]:
    """Column ``y`` of a boolean matrix as an int with bit ``x`` set iff ``cols[x, y]``."""
    packed = np.packbits(cols.T, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass(frozen=True)
class AbsorptionRelation:
    """``matrix[x, y]`` is true iff ``x != y`` and ``x`` is absorbed by ``y``."""

    matrix: np.ndarray
    coverage: list[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=bool)
        np.fill_diagonal(mat, False)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "coverage", _to_bitmasks(mat | np.eye(len(mat), dtype=bool)))

    @property
    def vertex_count(self) -> int:
        return self.matrix.shape[0]

    @property
    def full(self) -> int:
        return (1 << self.vertex_count) - 1

    def pairs(self) -> set[tuple[int, int]]:
        return {(int(x), int(y)) for x, y in np.argwhere(self.matrix)}

    def coverage_set(self, y: int) -> frozenset[int]:
        return frozenset(int(x) for x in np.flatnonzero(self.matrix[:, y])) | {y}

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbsorptionRelation):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


def transitive_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean squaring."""
    n = adj.shape[0]
    reach = (np.asarray(adj, dtype=bool) | np.eye(n, dtype=bool)).astype(np.float32)
    while True:
        nxt = (reach @ reach) > 0
        if np.array_equal(nxt, reach > 0):
            return nxt
        reach = nxt.astype(np.float32)


def monochromatic_reachability(t: ColouredTournament, c: int) -> np.ndarray:
    """``R[x, y]`` iff a colour-``c`` path (possibly empty) runs from ``x`` to ``y``."""
    return transitive_closure(t.colour_subgraph(c))


def _paths_of_positive_length(adj: np.ndarray) -> np.ndarray:
    reach = transitive_closure(adj)
    return (adj.astype(np.float32) @ reach.astype(np.float32)) > 0


def absorbed_by(t: ColouredTournament) -> AbsorptionRelation:
    """General absorption: union over colours of non-empty monochromatic paths."""
    N = t.vertex_count
    rel = np.zeros((N, N), dtype=bool)
    present = np.unique(t.matrix)
    for c in present[present > 0]:
        rel |= _paths_of_positive_length(t.matrix == c)
    return AbsorptionRelation(rel)


def _warshall(adj: np.ndarray) -> np.ndarray:
    reach = adj.copy()
    for k in range(reach.shape[0]):
        reach |= reach[:, k:k + 1] & reach[k:k + 1, :]
    return reach


def absorbed_by_construction(t: ColouredTournament, layout: BagLayout) -> AbsorptionRelation:
    """Absorption for bag-construction instances.

    Inter-bag arcs never chain into monochromatic paths, so the relation is
    every direct arc plus colour-``n`` reachability inside each bag.
    """
    report = validate_structure(t, layout)
    if not report.ok:
        raise StructureError(report.summary())
    rel = t.matrix > 0
    intra = t.matrix == t.colour_count
    for b in range(layout.p):
        block = slice(b * layout.m, (b + 1) * layout.m)
        rel[block, block] |= _warshall(intra[block, block])
    return AbsorptionRelation(rel)


def _mask_of(rel: AbsorptionRelation, S: Iterable[int]) -> int:
    N = rel.vertex_count
    covered = 0
    for y in S:
        if not 0 <= y < N:
            raise IndexError(f"vertex {y} out of range [0, {N})")
        covered |= rel.coverage[y]
    return covered


def is_absorbing(rel: AbsorptionRelation, S: Iterable[int]) -> bool:
    """True iff every vertex is in ``S`` or absorbed by a member of ``S``."""
    return _mask_of(rel, S) == rel.full


def coverage_histogram(rel: AbsorptionRelation) -> dict[int, int]:
    """Map ``|A(y)|`` to the number of vertices ``y`` with that coverage size."""
    sizes = rel.matrix.sum(axis=0) + 1
    return dict(sorted(Counter(int(s) for s in sizes).items()))

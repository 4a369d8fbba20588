"""Arc-coloured tournaments and the line-oriented "act 1" text format.

Vertices are dense integers ``0..N-1``; colours are 1-based, ``1..n``.
Internally a tournament is an ``N x N`` ``uint8`` matrix where entry
``[u, v]`` holds the colour of the arc ``u -> v`` and ``0`` means no arc.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Optional, TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .construction import BagLayout

MAX_COLOURS = 255


class TournamentError(ValueError):
    """Raised when an arc list does not describe a valid coloured tournament."""

    def __init__(self, message: str, pair: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class ParseError(ValueError):
    pass


class ColouredTournament:
    """Immutable complete orientation with an arc colouring."""

    __slots__ = ("_colours", "_n")

    def __init__(self, matrix: np.ndarray, colour_count: int):
        # trusted constructor: callers go through build() or from_matrix()
        self._colours = matrix
        self._colours.setflags(write=False)
        self._n = colour_count

    @classmethod
    def from_matrix(cls, matrix, colour_count: int) -> "ColouredTournament":
        """Validate a colour matrix and wrap it."""
        m = np.array(matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise TournamentError("matrix must be square and non-empty")
        if not 1 <= colour_count <= MAX_COLOURS:
            raise TournamentError(f"colour count {colour_count} outside [1, {MAX_COLOURS}]")
        diag = np.flatnonzero(np.diagonal(m))
        if diag.size:
            v = int(diag[0])
            raise TournamentError(f"self-loop at vertex {v}", (v, v))
        bad = np.argwhere((m < 0) | (m > colour_count))
        if bad.size:
            u, v = map(int, bad[0])
            raise TournamentError(
                f"colour {int(m[u, v])} out of range [1, {colour_count}] on arc ({u}, {v})", (u, v))
        present = m != 0
        both = np.argwhere(np.triu(present & present.T, 1))
        if both.size:
            u, v = map(int, both[0])
            raise TournamentError(f"duplicate arc on pair {{{u}, {v}}}", (u, v))
        missing = np.argwhere(np.triu(~(present | present.T), 1))
        if missing.size:
            u, v = map(int, missing[0])
            raise TournamentError(f"missing arc on pair {{{u}, {v}}}", (u, v))
        return cls(m.astype(np.uint8), colour_count)

    @property
    def vertex_count(self) -> int:
        return self._colours.shape[0]

    @property
    def colour_count(self) -> int:
        return self._n

    @property
    def matrix(self) -> np.ndarray:
        """Read-only colour matrix; ``matrix[u, v] == c`` iff arc ``u -> v`` has colour ``c``."""
        return self._colours

    def arc(self, u: int, v: int) -> tuple[int, int, int]:
        """Return ``(tail, head, colour)`` for the arc on the pair ``{u, v}``."""
        if u == v:
            raise TournamentError(f"no arc on a single vertex {u}", (u, v))
        c = int(self._colours[u, v])
        if c:
            return u, v, c
        return v, u, int(self._colours[v, u])

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """Arcs in canonical order: by ``(min id, max id)``."""
        mat = self._colours
        n = self.vertex_count
        for u in range(n):
            row, col = mat[u], mat[:, u]
            for v in range(u + 1, n):
                c = row[v]
                if c:
                    yield u, v, int(c)
                else:
                    yield v, u, int(col[v])

    def colour_subgraph(self, c: int) -> np.ndarray:
        """Boolean adjacency of the arcs coloured ``c``."""
        self._check_colour(c)
        return self._colours == c

    def _check_colour(self, c: int) -> None:
        if not 1 <= c <= self._n:
            raise ValueError(f"colour {c} out of range [1, {self._n}]")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColouredTournament):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._colours, other._colours)

    def __hash__(self):
        return hash((self._n, self._colours.tobytes()))

    def __repr__(self) -> str:
        return f"ColouredTournament(vertices={self.vertex_count}, colours={self._n})"


def build(vertex_count: int, colour_count: int,
          arc_list: Iterable[tuple[int, int, int]]) -> ColouredTournament:
    """Build a tournament from ``(tail, head, colour)`` triples.

    Every unordered pair of distinct vertices must appear exactly once.
    Errors name the offending pair.
    """
    if vertex_count < 1:
        raise TournamentError(f"vertex count must be >= 1, got {vertex_count}")
    if not 1 <= colour_count <= MAX_COLOURS:
        raise TournamentError(f"colour count {colour_count} outside [1, {MAX_COLOURS}]")
    mat = np.zeros((vertex_count, vertex_count), dtype=np.uint8)
    for tail, head, colour in arc_list:
        pair = (min(tail, head), max(tail, head))
        if tail == head:
            raise TournamentError(f"self-loop at vertex {tail}", (tail, head))
        if not (0 <= tail < vertex_count and 0 <= head < vertex_count):
            raise TournamentError(f"arc ({tail}, {head}) has a vertex outside [0, {vertex_count})", pair)
        if not 1 <= colour <= colour_count:
            raise TournamentError(
                f"colour {colour} out of range [1, {colour_count}] on pair {{{pair[0]}, {pair[1]}}}", pair)
        if mat[tail, head] or mat[head, tail]:
            raise TournamentError(f"duplicate arc on pair {{{pair[0]}, {pair[1]}}}", pair)
        mat[tail, head] = colour
    present = mat != 0
    missing = np.argwhere(np.triu(~(present | present.T), 1))
    if missing.size:
        u, v = map(int, missing[0])
        raise TournamentError(f"missing arc on pair {{{u}, {v}}}", (u, v))
    return ColouredTournament(mat, colour_count)


# -- text format --------------------------------------------------------------

def serialize(t: ColouredTournament, layout: Optional["BagLayout"] = None) -> str:
    """Canonical "act 1" text. Arc lines are ordered by ``(min id, max id)``."""
    lines = ["act 1", f"colours {t.colour_count}", f"vertices {t.vertex_count}"]
    lines.extend(f"arc {a} {b} {c}" for a, b, c in t.arcs())
    if layout is not None:
        if layout.vertex_count != t.vertex_count:
            raise ValueError(
                f"layout describes {layout.vertex_count} vertices, tournament has {t.vertex_count}")
        for i, subset in enumerate(layout.family):
            lines.append(" ".join(["bag", str(i), *map(str, subset)]))
        for v in range(layout.vertex_count):
            lines.append(f"vmap {v} {layout.bag_of(v)} {layout.copy_of(v)}")
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(tok, 10) for tok in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse(text: str) -> tuple[ColouredTournament, Optional["BagLayout"]]:
    """Parse "act 1" text into a tournament and its optional bag layout."""
    from .construction import BagLayout

    records: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if line:
            records.append((lineno, line))
    if len(records) < 3:
        raise ParseError("truncated header: expected 'act 1', 'colours', 'vertices'")
    (l1, h1), (l2, h2), (l3, h3) = records[:3]
    if h1 != ["act", "1"]:
        raise ParseError(f"line {l1}: expected 'act 1' header")
    if len(h2) != 2 or h2[0] != "colours":
        raise ParseError(f"line {l2}: expected 'colours <n>'")
    if len(h3) != 2 or h3[0] != "vertices":
        raise ParseError(f"line {l3}: expected 'vertices <N>'")
    (n,) = _ints(h2[1:], l2)
    (N,) = _ints(h3[1:], l3)
    if n < 1 or N < 1:
        raise ParseError("inconsistent header: colours and vertices must be >= 1")

    arcs, bags, vmaps = [], {}, {}
    for lineno, tok in records[3:]:
        kind, rest = tok[0], tok[1:]
        if kind == "arc":
            if len(rest) != 3:
                raise ParseError(f"line {lineno}: malformed arc line")
            if bags or vmaps:
                raise ParseError(f"line {lineno}: arc line after metadata")
            arcs.append(tuple(_ints(rest, lineno)))
        elif kind == "bag":
            vals = _ints(rest, lineno)
            if not vals:
                raise ParseError(f"line {lineno}: bag line without index")
            if vals[0] in bags:
                raise ParseError(f"line {lineno}: duplicate bag {vals[0]}")
            elems = vals[1:]
            if elems != sorted(set(elems)):
                raise ParseError(f"line {lineno}: bag elements must be strictly ascending")
            bags[vals[0]] = tuple(elems)
        elif kind == "vmap":
            vals = _ints(rest, lineno)
            if len(vals) != 3:
                raise ParseError(f"line {lineno}: malformed vmap line")
            if vals[0] in vmaps:
                raise ParseError(f"line {lineno}: duplicate vmap for vertex {vals[0]}")
            vmaps[vals[0]] = (vals[1], vals[2])
        else:
            raise ParseError(f"line {lineno}: unknown record {kind!r}")

    expected = N * (N - 1) // 2
    if len(arcs) != expected:
        raise ParseError(f"expected {expected} arcs, found {len(arcs)}")
    try:
        t = build(N, n, arcs)
    except TournamentError as exc:
        raise ParseError(str(exc)) from exc

    if not bags and not vmaps:
        return t, None
    if sorted(bags) != list(range(len(bags))) or not bags:
        raise ParseError("bag indices must be 0..p-1")
    family = tuple(bags[i] for i in range(len(bags)))
    if len(vmaps) != N or N % len(family):
        raise ParseError(f"vmap must cover all {N} vertices of {len(family)} equal bags")
    layout = BagLayout(family, N // len(family))
    for v, (b, i) in vmaps.items():
        if not 0 <= v < N:
            raise ParseError(f"vmap vertex {v} out of range")
        if not 0 <= b < len(family) or not 1 <= i <= layout.m or layout.vertex_of(i, b) != v:
            raise ParseError(f"vmap {v} {b} {i} disagrees with bag-major numbering")
    for subset in family:
        if any(not 1 <= e <= n - 1 for e in subset):
            raise ParseError(f"bag {subset} has elements outside [1, {n - 1}]")
    return t, layout

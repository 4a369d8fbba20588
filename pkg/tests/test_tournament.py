import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from absorbset.construction import ConstructionParams, generate
from absorbset.tournament import ParseError, TournamentError, build, parse, serialize

from conftest import tournaments


def test_single_vertex():
    t = build(1, 1, [])
    assert t.vertex_count == 1
    assert list(t.arcs()) == []


def test_two_vertices(two_vertex):
    assert list(two_vertex.arcs()) == [(0, 1, 1)]
    assert two_vertex.arc(1, 0) == (0, 1, 1)


@pytest.mark.parametrize("N, n, arcs, pair, words", [
    (3, 2, [(0, 1, 1), (1, 2, 2)], (0, 2), "missing"),
    (2, 1, [(0, 1, 1), (1, 0, 1)], (0, 1), "duplicate"),
    (2, 1, [(1, 1, 1)], (1, 1), "self-loop"),
    (2, 2, [(0, 1, 3)], (0, 1), "out of range"),
])
def test_build_errors_name_the_pair(N, n, arcs, pair, words):
    with pytest.raises(TournamentError, match=words) as info:
        build(N, n, arcs)
    assert info.value.pair == pair


def test_build_rejects_bad_sizes():
    with pytest.raises(TournamentError):
        build(0, 1, [])
    with pytest.raises(TournamentError):
        build(1, 0, [])


def test_colour_subgraph(two_vertex):
    assert set(map(tuple, np.argwhere(two_vertex.colour_subgraph(1)))) == {(0, 1)}
    t = build(2, 2, [(0, 1, 1)])
    assert not t.colour_subgraph(2).any()
    t3 = build(3, 2, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
    assert set(map(tuple, np.argwhere(t3.colour_subgraph(1)))) == {(0, 1), (1, 2)}
    with pytest.raises(ValueError):
        t3.colour_subgraph(3)


def test_matrix_is_read_only(two_vertex):
    with pytest.raises(ValueError):
        two_vertex.matrix[0, 1] = 0


@given(tournaments())
def test_exactly_one_arc_per_pair(t):
    present = t.matrix > 0
    N = t.vertex_count
    off = ~np.eye(N, dtype=bool)
    assert ((present ^ present.T) == off).all()
    total = sum(int(t.colour_subgraph(c).sum()) for c in range(1, t.colour_count + 1))
    assert total == N * (N - 1) // 2


@given(tournaments())
def test_round_trip(t):
    t2, layout = parse(serialize(t))
    assert t2 == t and layout is None


def test_round_trip_two_vertex(two_vertex):
    text = serialize(two_vertex)
    assert text == "act 1\ncolours 1\nvertices 2\narc 0 1 1\n"
    assert parse(text)[0] == two_vertex


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3), st.integers(0, 2**64 - 1))
def test_round_trip_with_layout(n, m, seed):
    t, layout = generate(ConstructionParams(n, m, seed))
    t2, layout2 = parse(serialize(t, layout))
    assert t2 == t and layout2 == layout
    assert serialize(t2, layout2) == serialize(t, layout)


def test_serialization_is_canonical():
    t = build(3, 2, [(2, 0, 1), (1, 2, 2), (0, 1, 1)])
    lines = serialize(t).splitlines()[3:]
    assert lines == ["arc 0 1 1", "arc 2 0 1", "arc 1 2 2"]


def test_parse_wrong_arc_count():
    text = "act 1\ncolours 1\nvertices 3\narc 0 1 1\narc 1 2 1\n"
    with pytest.raises(ParseError, match="expected 3 arcs"):
        parse(text)


@pytest.mark.parametrize("text, words", [
    ("act 2\ncolours 1\nvertices 1\n", "act 1"),
    ("act 1\nvertices 1\ncolours 1\n", "colours"),
    ("act 1\ncolours x\nvertices 1\n", "integers"),
    ("act 1\ncolours 1\nvertices 2\narc 0 1\n", "malformed"),
    ("act 1\ncolours 1\nvertices 2\nedge 0 1 1\n", "unknown"),
    ("act 1\ncolours 1\nvertices 2\narc 0 1 2\n", "out of range"),
    ("act 1\ncolours 3\nvertices 2\narc 1 0 1\nbag 0 1\nbag 1 2\nvmap 0 1 1\nvmap 1 0 1\n", "bag-major"),
    ("act 1\ncolours 3\nvertices 2\narc 1 0 1\nbag 0 2 1\nbag 1 2\nvmap 0 0 1\nvmap 1 1 1\n", "ascending"),
])
def test_parse_errors(text, words):
    with pytest.raises(ParseError, match=words):
        parse(text)


def test_parse_ignores_comments_and_blank_lines():
    text = "# instance\nact 1\n\ncolours 1  # one colour\nvertices 2\narc 1 0 1\n"
    t, _ = parse(text)
    assert list(t.arcs()) == [(1, 0, 1)]


def test_empty_bag_line_round_trips():
    t, layout = generate(ConstructionParams(2, 3, 9))
    text = serialize(t, layout)
    assert "bag 0\n" in text
    assert parse(text) == (t, layout)

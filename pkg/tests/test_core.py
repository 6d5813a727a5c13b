import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergebook.constructions import fig1
from bergebook.core import (Degenerate, Duplicate, EdgeColor, FormatError, Hypergraph,
                            OutOfRange, all_triples, build, color, color_of, dumps,
                            edge_pairs, loads, partition, read, shadow, write)


@st.composite
def hypergraphs(draw, lo=4, hi=30):
    n = draw(st.integers(lo, hi))
    triples = all_triples(n)
    idx = draw(st.sets(st.integers(0, len(triples) - 1), max_size=min(60, len(triples))))
    return Hypergraph(n, tuple(triples[i] for i in sorted(idx)))


def test_build_single_edge():
    h = build(4, [(0, 1, 2)])
    assert len(h) == 1 and h.n == 4


def test_build_canonical_order():
    assert build(4, [(2, 1, 0)]).edges == ((0, 1, 2),)


@pytest.mark.parametrize("n,triples,exc", [
    (4, [(0, 1, 1)], Degenerate),
    (4, [(0, 1, 4)], OutOfRange),
    (4, [(0, 1, -1)], OutOfRange),
    (4, [(0, 1, 2), (2, 0, 1)], Duplicate),
    (4, [(0, 1)], Degenerate),
])
def test_build_errors(n, triples, exc):
    with pytest.raises(exc):
        build(n, triples)


def test_shadow_single_edge():
    s = shadow(build(4, [(0, 1, 2)]))
    assert s.codegree == {(0, 1): 1, (0, 2): 1, (1, 2): 1}
    assert s[(2, 3)] == 0


def test_shadow_two_edges():
    s = shadow(build(4, [(0, 1, 2), (0, 1, 3)]))
    assert s[(0, 1)] == 2
    assert [s[p] for p in [(0, 2), (1, 2), (0, 3), (1, 3)]] == [1, 1, 1, 1]


def test_shadow_fig1_8_doubled_pair():
    # layout: x = 0,1  x' = 2,3  y = 4,5  y' = 6,7
    h = fig1(8)
    counts = {}
    for e in h.edges:
        for p in edge_pairs(e):
            counts[p] = counts.get(p, 0) + 1
    assert counts[(4, 6)] == 4 and counts[(5, 7)] == 4
    assert shadow(h).codegree == counts


def test_color():
    s = shadow(build(4, [(0, 1, 2), (0, 1, 3)]))
    assert color(s, (0, 1)) is EdgeColor.BLUE
    assert color(s, (1, 0)) is EdgeColor.BLUE
    assert color(s, (0, 2)) is EdgeColor.RED
    assert color(s, (2, 3)) is None
    assert [color_of(c) for c in (0, 1, 2, 5)] == [None, EdgeColor.RED, EdgeColor.BLUE, EdgeColor.BLUE]


def test_partition_examples():
    h = build(4, [(0, 1, 2), (0, 1, 3)])
    part = partition(h)
    assert part.h1 == set(h.edges) and not part.h2

    part = partition(fig1(8))
    assert not part.h2 and len(part.h1) == 8

    k4 = build(4, all_triples(4))
    part = partition(k4)
    assert part.h2 == set(k4.edges) and not part.h1


@settings(max_examples=200, deadline=None)
@given(hypergraphs())
def test_partition_is_a_partition(h):
    part = partition(h)
    assert len(part.h1) + len(part.h2) == len(h)
    assert not part.h1 & part.h2
    assert part.h1 | part.h2 == set(h.edges)


@settings(max_examples=200, deadline=None)
@given(hypergraphs())
def test_codegree_sum(h):
    assert shadow(h).total() == 3 * len(h)
    assert all(c >= 1 for c in shadow(h).codegree.values())


@settings(max_examples=200, deadline=None)
@given(hypergraphs(), st.data())
def test_removing_an_edge_drops_three_codegrees(h, data):
    if not h.edges:
        return
    e = data.draw(st.sampled_from(h.edges))
    before, after = shadow(h), shadow(h.without(e))
    diff = {p: before[p] - after[p] for p in set(before.codegree) | set(after.codegree)}
    assert sorted(p for p, d in diff.items() if d) == sorted(edge_pairs(e))
    assert all(d in (0, 1) for d in diff.values())
    assert before.remove(e) == after
    assert after.add(e) == before
    # red never turns blue when an edge goes away
    for p in before.codegree:
        if color(before, p) is EdgeColor.RED:
            assert color(after, p) is not EdgeColor.BLUE


def test_incremental_shadow_matches_scratch():
    rng = random.Random(3)
    triples = all_triples(9)
    rng.shuffle(triples)
    s = shadow(Hypergraph(9, ()))
    for i, t in enumerate(triples[:40]):
        s = s.add(t)
        assert s == shadow(Hypergraph(9, tuple(sorted(triples[: i + 1]))))


def test_hypergraph_indexes():
    h = build(5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)])
    assert h.edges_on(1, 0) == ((0, 1, 2), (0, 1, 3))
    assert h.edges_on(0, 4) == ()
    assert h.vertex_edges[2] == ((0, 1, 2), (2, 3, 4))
    assert (0, 1, 3) in h and (1, 2, 3) not in h


# -- .3hg ---------------------------------------------------------------------

def test_3hg_roundtrip(tmp_path):
    h = fig1(12)
    path = tmp_path / "f.3hg"
    write(h, path, ["generated"])
    text = path.read_text()
    assert text.startswith("# generated\n12 18\n")
    assert read(path) == h


def test_3hg_unsorted_and_comments():
    text = "# a comment\n5 2\n4 0 2   # trailing\n\n3 1 0\n"
    h = loads(text)
    assert h.edges == ((0, 1, 3), (0, 2, 4))
    assert dumps(h) == "5 2\n0 1 3\n0 2 4\n"


def test_3hg_named_vertices():
    h = loads("4 2\na b c\nb c d\n")
    assert h.edges == ((0, 1, 2), (1, 2, 3))


@pytest.mark.parametrize("text", [
    "",
    "3\n0 1 2\n",
    "3 2\n0 1 2\n",
    "3 1\n0 1\n",
    "x y\n",
    "2 1\na b c\n",
])
def test_3hg_malformed(text):
    with pytest.raises(FormatError):
        loads(text)


def test_3hg_invalid_edges_surface_as_build_errors():
    with pytest.raises(OutOfRange):
        loads("3 1\n0 1 3\n")
    with pytest.raises(Duplicate):
        loads("4 2\n0 1 2\n2 1 0\n")

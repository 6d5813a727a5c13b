"""3-uniform hypergraphs, their 2-shadow, red/blue pair colouring and the
H1/H2 partition.

Vertices are dense integers ``0..n-1`` and a hyperedge is a sorted triple
``(a, b, c)`` with ``a < b < c``.  Pairs are sorted 2-tuples.
"""

from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, TextIO

Edge = tuple[int, int, int]
Pair = tuple[int, int]


class HypergraphError(ValueError):
    """Base class for invalid hypergraph input."""


class OutOfRange(HypergraphError):
    pass


class Degenerate(HypergraphError):
    pass


class Duplicate(HypergraphError):
    pass


class FormatError(HypergraphError):
    """Malformed ``.3hg`` text."""


def pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def edge_pairs(e: Edge) -> tuple[Pair, Pair, Pair]:
    a, b, c = e
    return (a, b), (a, c), (b, c)


@dataclass(frozen=True)
class Hypergraph:
    """An immutable 3-uniform hypergraph on vertices ``0..n-1``.

    ``edges`` is kept as a sorted tuple of canonical triples so that equality,
    hashing and iteration order are all structural.  Use :func:`build` to
    construct one from arbitrary triples.
    """

    n: int
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def pair_edges(self) -> dict[Pair, tuple[Edge, ...]]:
        """Map each shadow pair to the (sorted) hyperedges containing it."""
        index: dict[Pair, list[Edge]] = defaultdict(list)
        for e in self.edges:
            for p in edge_pairs(e):
                index[p].append(e)
        return {p: tuple(es) for p, es in index.items()}

    def edges_on(self, u: int, v: int) -> tuple[Edge, ...]:
        return self.pair_edges.get(pair(u, v), ())

    @cached_property
    def vertex_edges(self) -> tuple[tuple[Edge, ...], ...]:
        inc: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for x in e:
                inc[x].append(e)
        return tuple(tuple(es) for es in inc)

    def with_edges(self, edges: Iterable[Edge]) -> Hypergraph:
        """Same vertex set, different (already canonical) edge collection."""
        return Hypergraph(self.n, tuple(sorted(set(edges))))

    def without(self, e: Edge) -> Hypergraph:
        return Hypergraph(self.n, tuple(f for f in self.edges if f != e))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={len(self.edges)})"


def build(n: int, triples: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and canonicalize ``triples`` into a :class:`Hypergraph`.

    Raises :class:`OutOfRange`, :class:`Degenerate` or :class:`Duplicate`.
    """
    if n < 0:
        raise OutOfRange(f"negative vertex count {n}")
    seen: set[Edge] = set()
    for raw in triples:
        t = tuple(raw)
        if len(t) != 3:
            raise Degenerate(f"hyperedge {t} does not have 3 vertices")
        for x in t:
            if not isinstance(x, int) or not 0 <= x < n:
                raise OutOfRange(f"vertex {x!r} of {t} outside [0, {n})")
        if len(set(t)) != 3:
            raise Degenerate(f"repeated vertex in {t}")
        e = tuple(sorted(t))
        if e in seen:
            raise Duplicate(f"hyperedge {e} given twice")
        seen.add(e)  # type: ignore[arg-type]
    return Hypergraph(n, tuple(sorted(seen)))


def all_triples(n: int) -> list[Edge]:
    return list(combinations(range(n), 3))  # type: ignore[arg-type]


# -- shadow ------------------------------------------------------------------


class EdgeColor(enum.Enum):
    RED = "red"
    BLUE = "blue"


@dataclass(frozen=True)
class ShadowGraph:
    """Codegree table of the 2-shadow; pairs of codegree 0 are not stored."""

    n: int
    codegree: dict[Pair, int] = field(default_factory=dict)

    def __getitem__(self, p: Pair) -> int:
        return self.codegree.get(pair(*p), 0)

    def pairs(self) -> list[Pair]:
        return sorted(self.codegree)

    def total(self) -> int:
        return sum(self.codegree.values())

    def add(self, e: Edge) -> ShadowGraph:
        """Incremental update; must agree with ``shadow`` on the new edge set."""
        cd = dict(self.codegree)
        for p in edge_pairs(e):
            cd[p] = cd.get(p, 0) + 1
        return ShadowGraph(self.n, cd)

    def remove(self, e: Edge) -> ShadowGraph:
        cd = dict(self.codegree)
        for p in edge_pairs(e):
            c = cd.get(p, 0)
            if c <= 0:
                raise ValueError(f"pair {p} of {e} is not in the shadow")
            if c == 1:
                del cd[p]
            else:
                cd[p] = c - 1
        return ShadowGraph(self.n, cd)


def shadow(h: Hypergraph) -> ShadowGraph:
    return ShadowGraph(h.n, {p: len(es) for p, es in h.pair_edges.items()})


def color_of(codegree: int) -> EdgeColor | None:
    if codegree >= 2:
        return EdgeColor.BLUE
    if codegree == 1:
        return EdgeColor.RED
    return None


def color(s: ShadowGraph, p: Pair) -> EdgeColor | None:
    """Red for codegree 1, blue for codegree >= 2, ``None`` off the shadow."""
    return color_of(s[p])


@dataclass(frozen=True)
class Partition:
    h1: frozenset[Edge]
    h2: frozenset[Edge]


def partition(h: Hypergraph, s: ShadowGraph | None = None) -> Partition:
    """Split edges by majority colour of their three shadow pairs.

    Three pairs and two colours means exactly one of "at least two red" and
    "at least two blue" holds, so this is a true partition.
    """
    s = s if s is not None else shadow(h)
    h1, h2 = [], []
    for e in h.edges:
        blue = sum(s.codegree[p] >= 2 for p in edge_pairs(e))
        (h2 if blue >= 2 else h1).append(e)
    return Partition(frozenset(h1), frozenset(h2))


def sub_hypergraph(h: Hypergraph, edges: Iterable[Edge]) -> Hypergraph:
    return h.with_edges(edges)


# -- .3hg text format -------------------------------------------------------

_INT = re.compile(r"-?\d+")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def loads(text: str) -> Hypergraph:
    """Parse ``.3hg`` text.

    Vertex tokens that are all integers are taken as 0-based indices.  If any
    token is non-numeric, every token is treated as a name and names are
    numbered in order of first appearance.
    """
    lines = [ln for ln in (_strip(raw) for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty input: missing 'n m' header")
    header = lines[0].split()
    if len(header) != 2 or not all(_INT.fullmatch(t) for t in header):
        raise FormatError(f"bad header {lines[0]!r}, expected 'n m'")
    n, m = int(header[0]), int(header[1])
    if n < 0 or m < 0:
        raise FormatError("negative n or m in header")
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != m:
        raise FormatError(f"header announces {m} edges, found {len(rows)}")
    for r in rows:
        if len(r) != 3:
            raise FormatError(f"edge line {' '.join(r)!r} does not have 3 tokens")
    if all(_INT.fullmatch(t) for r in rows for t in r):
        triples = [tuple(int(t) for t in r) for r in rows]
    else:
        names: dict[str, int] = {}
        triples = [tuple(names.setdefault(t, len(names)) for t in r) for r in rows]
        if len(names) > n:
            raise FormatError(f"{len(names)} distinct vertex names but n = {n}")
    return build(n, triples)


def dumps(h: Hypergraph, header: Iterable[str] = ()) -> str:
    out = [f"# {line}" for line in header]
    out.append(f"{h.n} {len(h.edges)}")
    out.extend(f"{a} {b} {c}" for a, b, c in h.edges)
    return "\n".join(out) + "\n"


def read(path: str | Path | TextIO) -> Hypergraph:
    if hasattr(path, "read"):
        return loads(path.read())  # type: ignore[union-attr]
    return loads(Path(path).read_text())


def write(h: Hypergraph, path: str | Path, header: Iterable[str] = ()) -> None:
    Path(path).write_text(dumps(h, header), newline="\n")

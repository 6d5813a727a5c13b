"""Instance generators and small utilities shared by the test modules."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

from bergebook.core import Hypergraph, all_triples, edge_pairs, partition
from bergebook.detect import find_berge_book
from bergebook.search import touching_pairs

SEED = 20261016


def from_mask(n: int, mask: int) -> Hypergraph:
    triples = all_triples(n)
    return Hypergraph(n, tuple(t for i, t in enumerate(triples) if mask >> i & 1))


def all_on(n: int) -> list[Hypergraph]:
    """Every hypergraph on n vertices (2^C(n,3) of them)."""
    T = len(all_triples(n))
    return [from_mask(n, m) for m in range(1 << T)]


def random_dense(n: int, count: int, seed: int) -> list[Hypergraph]:
    """Random hypergraphs, each with its own inclusion probability in [0, 1)."""
    rng = random.Random(seed)
    triples = all_triples(n)
    out = []
    for _ in range(count):
        p = rng.random()
        out.append(Hypergraph(n, tuple(t for t in triples if rng.random() < p)))
    return out


@lru_cache(maxsize=None)
def five_and_six() -> tuple[Hypergraph, ...]:
    """The fixed instance set: all 1024 on 5 vertices plus 10^5 random on 6."""
    return tuple(all_on(5) + random_dense(6, 100_000, SEED))


def greedy_free(n: int, k: int, target: int, rng: random.Random) -> Hypergraph:
    """Random maximal-ish B_k-free hypergraph grown one triple at a time."""
    triples = all_triples(n)
    rng.shuffle(triples)
    cur: list = []
    for t in triples:
        if len(cur) >= target:
            break
        trial = Hypergraph(n, tuple(sorted(cur + [t])))
        if find_berge_book(trial, k, touching_pairs(n, t)) is None:
            cur.append(t)
    return Hypergraph(n, tuple(sorted(cur)))


def h2_codegrees(h: Hypergraph) -> dict:
    part = partition(h)
    count: dict = {}
    for e in part.h2:
        for p in edge_pairs(e):
            count[p] = count.get(p, 0) + 1
    return count


def compact(h: Hypergraph, edges=None) -> Hypergraph:
    """Relabel the vertices actually used by ``edges`` to 0..r-1."""
    edges = list(h.edges if edges is None else edges)
    used = sorted({x for e in edges for x in e})
    ix = {x: i for i, x in enumerate(used)}
    return Hypergraph(len(used), tuple(sorted(tuple(sorted(ix[x] for x in e)) for e in edges)))


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield tuple(p for i, p in enumerate(pairs) if mask >> i & 1)

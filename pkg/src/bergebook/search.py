"""Exact ex_3(n, B_k) for tiny n.

Two independent routes: :func:`turan_exhaustive` walks every subset of the
C(n,3) triples and asks the brute-force oracle; :func:`turan_branch_bound`
does a depth-first include/exclude search in canonical triple order with
incremental book detection and a counting bound.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .constructions import Fig1Layout, fig1
from .core import Edge, Hypergraph, Pair, all_triples
from .detect import find_berge_book, oracle_contains_book

EXHAUSTIVE_MAX_N = 5


class TooLarge(ValueError):
    pass


class Method(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    BRANCH_BOUND = "branch_bound"


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    max_edges: int
    witness: Hypergraph
    nodes_explored: int
    method: Method
    optimal: bool = True


def turan_exhaustive(n: int, k: int) -> SearchResult:
    """Max over all 2^C(n,3) edge sets that the oracle finds B_k-free."""
    if n > EXHAUSTIVE_MAX_N:
        raise TooLarge(f"exhaustive search is limited to n <= {EXHAUSTIVE_MAX_N}")
    if k < 1:
        raise ValueError("k must be >= 1")
    triples = all_triples(max(n, 0))
    best_mask, best = 0, 0
    total = 1 << len(triples)
    for mask in range(total):
        size = mask.bit_count()
        if size <= best:
            continue
        h = Hypergraph(n, tuple(t for i, t in enumerate(triples) if mask >> i & 1))
        if not oracle_contains_book(h, k):
            best_mask, best = mask, size
    witness = Hypergraph(n, tuple(t for i, t in enumerate(triples) if best_mask >> i & 1))
    return SearchResult(n, k, best, witness, total, Method.EXHAUSTIVE)


def touching_pairs(n: int, e: Edge) -> list[Pair]:
    """Base pairs a new book through ``e`` could use.

    Every hyperedge of a Berge-B_k contains a base vertex (the apex holds
    both, each page edge holds one), so the base meets ``e``.  Pairs inside
    ``e`` alone are not enough: ``e`` may serve as a page edge.
    """
    s = set(e)
    return [(a, b) for a, b in combinations(range(n), 2) if a in s or b in s]


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, n: int, k: int, triples: list[Edge], deadline: float | None,
                 node_budget: int | None, best: int):
        self.n, self.k, self.triples = n, k, triples
        self.deadline, self.node_budget = deadline, node_budget
        self.touch = [touching_pairs(n, e) for e in triples]
        self.nodes = 0
        self.best = best
        self.best_edges: tuple[Edge, ...] | None = None

    def run(self, start: int, cur: tuple[Edge, ...]) -> None:
        T = len(self.triples)
        stack = [(start, cur)]
        while stack:
            i, cur = stack.pop()
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                raise _Budget
            if (self.deadline is not None and self.nodes & 255 == 0
                    and time.monotonic() > self.deadline):
                raise _Budget
            if len(cur) + (T - i) <= self.best:
                continue
            if i == T:
                self.best, self.best_edges = len(cur), cur
                continue
            stack.append((i + 1, cur))
            grown = cur + (self.triples[i],)
            if find_berge_book(Hypergraph(self.n, grown), self.k, self.touch[i]) is None:
                stack.append((i + 1, grown))


def _subtree(args: tuple) -> tuple[int, tuple[Edge, ...] | None, int, bool]:
    n, k, prefix, deadline, node_budget, floor = args
    triples = all_triples(n)
    s = _Search(n, k, triples, deadline, node_budget, floor)
    cur = tuple(t for t, take in zip(triples, prefix) if take)
    if cur and find_berge_book(Hypergraph(n, cur), k) is not None:
        return s.best, None, 1, True
    try:
        s.run(len(prefix), cur)
        done = True
    except _Budget:
        done = False
    return s.best, s.best_edges, s.nodes, done


def turan_branch_bound(n: int, k: int, time_budget: float | None = None, *,
                       node_budget: int | None = None, workers: int = 1) -> SearchResult:
    """Exact ex_3(n, B_k) by depth-first branch and bound.

    Triples are decided in canonical order, "include" first.  A triple is
    included only if no book appears with a base pair meeting it; a branch is
    cut when even taking every remaining triple cannot beat the best so far.
    The search starts from an empty incumbent, so the first leaf reached is
    the greedy maximal B_k-free hypergraph.

    If ``time_budget`` (seconds) or ``node_budget`` runs out, the best
    hypergraph found so far is returned with ``optimal=False``.

    ``workers > 1`` splits the tree at the root over the first few triples
    and searches the subtrees in separate processes; ``max_edges`` is the same,
    and the witness is the one from the first subtree (in include-first
    order) attaining it.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 3:
        return SearchResult(n, k, 0, Hypergraph(max(n, 0), ()), 1, Method.BRANCH_BOUND)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    triples = all_triples(n)

    if workers <= 1:
        s = _Search(n, k, triples, deadline, node_budget, best=-1)
        try:
            s.run(0, ())
            done = True
        except _Budget:
            done = False
        edges = s.best_edges or ()
        return SearchResult(n, k, len(edges), Hypergraph(n, edges), s.nodes,
                            Method.BRANCH_BOUND, optimal=done)

    depth = min(len(triples), max(1, (workers - 1).bit_length()))
    prefixes = []
    for code in range(1 << depth):
        prefixes.append(tuple(not (code >> (depth - 1 - i) & 1) for i in range(depth)))
    jobs = [(n, k, p, deadline, node_budget, -1) for p in prefixes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_subtree, jobs))
    best_edges: tuple[Edge, ...] = ()
    for _, edges, _, _ in results:
        if edges is not None and len(edges) > len(best_edges):
            best_edges = edges
    nodes = sum(r[2] for r in results)
    done = all(r[3] for r in results)
    return SearchResult(n, k, len(best_edges), Hypergraph(n, best_edges), nodes,
                        Method.BRANCH_BOUND, optimal=done)


class ProbeRow(NamedTuple):
    n: int
    max_edges: int
    bound: Fraction
    slack: Fraction
    optimal: bool
    fig1_lower: int | None


def conjecture_probe(n_list: list[int], k: int, time_budget: float | None = None
                     ) -> list[ProbeRow]:
    """Exact small-n values next to n^2/8; slack = n^2/8 - max_edges.

    ``fig1_lower`` is |fig1(n)| when that construction fits on n vertices.
    """
    rows = []
    for n in n_list:
        res = turan_branch_bound(n, k, time_budget)
        bound = Fraction(n * n, 8)
        fit = n >= 4 and Fig1Layout.for_n(n).vertices <= n
        rows.append(ProbeRow(n, res.max_edges, bound, bound - res.max_edges,
                             res.optimal, len(fig1(n)) if fit else None))
    return rows

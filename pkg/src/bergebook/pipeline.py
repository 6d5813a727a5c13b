"""Book extraction and H2 reduction, run as verify-or-fail procedures.

Given a hypergraph and k, the pipeline either extracts an explicit Berge-B_k
(from a dense red graph, or from a pair lying in 2k-1 hyperedges of H2) or
shrinks H2 to a linear, Berge-triangle-free hypergraph with bounded loss.

Every certificate is checked with :func:`bergebook.detect.verify_book` before
it is returned.  A certificate that fails the check raises
:class:`ExtractionFailed` carrying the full extraction state; a violated
precondition raises :class:`HypothesisUnmet`.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Protocol

from .core import Edge, Hypergraph, Pair, edge_pairs, pair, partition, shadow
from .detect import BookCertificate, Page, find_berge_triangle, is_linear, verify_book
from .matching import koenig_cover, max_matching

__all__ = [
    "HypothesisUnmet", "ExtractionFailed", "RedGraph", "SimpleGraph",
    "HeavyEdgeResult", "ExtractionState", "BoundCheck", "PipelineReport",
    "red_graph", "find_heavy_edge", "lemma1_extract", "lemma2_extract",
    "linearize", "triangle_free_prune", "run_pipeline",
]


class HypothesisUnmet(ValueError):
    """The input does not satisfy the step's precondition.

    ``certificate`` is set when the violation itself exhibits a Berge-B_k.
    """

    def __init__(self, msg: str, certificate: BookCertificate | None = None):
        super().__init__(msg)
        self.certificate = certificate


class ExtractionFailed(RuntimeError):
    """An extraction produced something that does not verify.

    This would contradict the argument the step implements, so it is never
    swallowed.  ``state`` holds the bookkeeping at the time of failure.
    """

    def __init__(self, msg: str, state: ExtractionState | None = None):
        super().__init__(msg)
        self.state = state

    def dump(self) -> str:
        return json.dumps(self.state.to_json() if self.state else None, indent=2)


def _third(e: Edge, a: int, b: int) -> int:
    (c,) = (x for x in e if x != a and x != b)
    return c


# -- graphs -------------------------------------------------------------------


class GraphLike(Protocol):
    n: int
    edges: tuple[Pair, ...]


class SimpleGraph(NamedTuple):
    n: int
    edges: tuple[Pair, ...]


@dataclass(frozen=True)
class RedGraph:
    n: int
    edges: tuple[Pair, ...]
    carrier: dict[Pair, Edge]


def red_graph(h: Hypergraph) -> RedGraph:
    """Shadow pairs of codegree exactly 1, each with its unique hyperedge."""
    carrier = {p: es[0] for p, es in sorted(h.pair_edges.items()) if len(es) == 1}
    return RedGraph(h.n, tuple(carrier), carrier)


class HeavyEdgeResult(NamedTuple):
    pair: Pair
    triangle_count: int
    witnesses: tuple[int, ...]


def find_heavy_edge(g: GraphLike, threshold: Fraction | int) -> HeavyEdgeResult | None:
    """Edge in the most triangles, if that count reaches ``threshold``.

    Ties go to the lexicographically smallest pair.
    """
    adj = [0] * g.n
    for a, b in g.edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    best: Pair | None = None
    best_count = -1
    for a, b in sorted(pair(*p) for p in g.edges):
        c = (adj[a] & adj[b]).bit_count()
        if c > best_count:
            best, best_count = (a, b), c
    if best is None or best_count < threshold:
        return None
    common = adj[best[0]] & adj[best[1]]
    wit = tuple(x for x in range(g.n) if common >> x & 1)
    return HeavyEdgeResult(best, best_count, wit)


# -- extraction state ---------------------------------------------------------


@dataclass
class ExtractionState:
    base: Pair
    apex: Edge | None
    v_good: list[int] = field(default_factory=list)
    v_bad: list[int] = field(default_factory=list)
    e_good: list[Edge] = field(default_factory=list)
    pages: dict[int, tuple[Edge, Edge]] = field(default_factory=dict)
    log: list[str] = field(default_factory=list)

    def add_good(self, *es: Edge) -> None:
        for e in es:
            if e not in self.e_good:
                self.e_good.append(e)

    def drop(self, x: int, to_bad: bool = False) -> bool:
        if x not in self.v_good:
            return False
        self.v_good.remove(x)
        if to_bad:
            self.v_bad.append(x)
        return True

    def to_json(self) -> dict:
        d = asdict(self)
        d["pages"] = {str(x): [list(e), list(f)] for x, (e, f) in self.pages.items()}
        return d


def _finish(h: Hypergraph, state: ExtractionState, k: int, skip: int | None = None
            ) -> BookCertificate:
    u, v = state.base
    xs = sorted(x for x in state.pages if x in state.v_good and x != skip)[:k]
    if len(xs) < k or state.apex is None:
        raise ExtractionFailed(f"only {len(xs)} usable pages for k = {k}", state)
    pages = tuple(Page(x, *state.pages[x]) for x in xs)
    cert = BookCertificate((u, v), state.apex, pages)
    good = set(state.e_good) | {state.apex}
    if not verify_book(h, cert) or not set(cert.hyperedges()) <= good:
        raise ExtractionFailed("assembled book does not verify", state)
    return cert


def lemma1_extract(h: Hypergraph, k: int) -> BookCertificate:
    """Book from a red graph with more than n^2/4 edges (requires n > 12k).

    A red edge uv lying in >= n/6 red triangles is taken as the base and the
    unique hyperedge uvw on it as the apex.  Each surviving witness x has
    forced carriers u x y and v x z; the four cases for whether y, z are
    still in V_good decide which vertex leaves it.  The apex vertex w is not
    a usable page (its carriers are the apex itself) and is left out of
    V_good.
    """
    n = h.n
    if k < 1:
        raise HypothesisUnmet("k must be >= 1")
    rg = red_graph(h)
    if 4 * len(rg.edges) <= n * n:
        raise HypothesisUnmet(f"red graph has {len(rg.edges)} <= n^2/4 edges (n = {n})")
    if n <= 12 * k:
        raise HypothesisUnmet(f"n = {n} is not > 12k = {12 * k}")

    heavy = find_heavy_edge(rg, Fraction(n, 6))
    if heavy is None:
        raise ExtractionFailed("no red edge in n/6 red triangles")
    u, v = heavy.pair
    carrier = rg.carrier
    apex = carrier[(u, v)]
    w = _third(apex, u, v)
    original = [x for x in heavy.witnesses if x != w]
    st = ExtractionState((u, v), apex, v_good=list(original))
    st.log.append(f"base {u},{v} with {heavy.triangle_count} red triangles; apex {apex}")

    for x in original:
        if x not in st.v_good:
            continue
        e, f = carrier[pair(u, x)], carrier[pair(v, x)]
        y, z = _third(e, u, x), _third(f, v, x)
        st.add_good(e, f)
        # membership is against the current V_good: a vertex dropped earlier
        # is no page, so its carriers cannot collide with this one's
        y_in, z_in = y in st.v_good, z in st.v_good
        if not y_in and not z_in:
            st.pages[x] = (e, f)
            st.log.append(f"x={x}: case 1")
        elif z_in and not y_in:
            st.pages[x] = (e, f)
            st.drop(z)
            st.log.append(f"x={x}: case 2, drop {z}")
        elif y_in and not z_in:
            st.pages[x] = (e, f)
            st.drop(y)
            st.log.append(f"x={x}: case 3, drop {y}")
        elif y != z:
            st.drop(x)
            st.add_good(carrier[pair(u, y)], carrier[pair(v, z)])
            st.log.append(f"x={x}: case 4, y={y} != z={z}, drop {x}")
        else:
            st.pages[x] = (e, f)
            st.drop(y)
            st.log.append(f"x={x}: case 4, y = z = {y}, drop {y}")
    return _finish(h, st, k)


def lemma2_extract(h: Hypergraph, uv: Pair, k: int) -> BookCertificate:
    """Book from a pair lying in >= 2k-1 hyperedges of H2.

    For each third vertex x_i a blue pair among {u, x_i}, {v, x_i} supplies a
    second hyperedge; the {u, x_i} side is tried first.  A second hyperedge
    whose third vertex is a still-unprocessed x_j sends x_j to V_bad, whose
    first member then donates the apex u v x_bad.  With V_bad empty the last
    x_i gives up its page and donates the apex instead.
    """
    if k < 2:
        raise HypothesisUnmet("the codegree extraction needs k >= 2")
    u, v = pair(*uv)
    if u == v:
        raise HypothesisUnmet("pair needs two distinct vertices")
    part = partition(h)
    on = [e for e in h.edges_on(u, v) if e in part.h2]
    if len(on) < 2 * k - 1:
        raise HypothesisUnmet(f"pair {(u, v)} lies in {len(on)} < 2k-1 hyperedges of H2")
    on = on[: 2 * k - 1]
    xs = [_third(e, u, v) for e in on]
    base_of = dict(zip(xs, on))
    st = ExtractionState((u, v), None, v_good=list(xs))
    done: set[int] = set()

    for x in xs:
        if x not in st.v_good:
            continue
        b = base_of[x]
        second = side = None
        for s in (u, v):
            others = [e for e in h.edges_on(s, x) if e != b]
            if others:
                second, side = others[0], s
                break
        if second is None:
            raise ExtractionFailed(f"hyperedge {b} of H2 has no blue pair at {x}", st)
        y = _third(second, side, x)
        if y in st.v_good and y not in done:
            st.drop(y, to_bad=True)
            st.log.append(f"x={x}: {second} hits unprocessed {y}, moved to V_bad")
        st.add_good(second, b)
        st.pages[x] = (second, b) if side == u else (b, second)
        done.add(x)

    skip = None
    if st.v_bad:
        st.apex = base_of[st.v_bad[0]]
    else:
        skip = xs[-1]
        st.apex = base_of[skip]
    return _finish(h, st, k, skip=skip)


# -- reductions ---------------------------------------------------------------


def _linearize(h2: Hypergraph, k: int) -> tuple[Hypergraph, int]:
    if k < 2:
        raise HypothesisUnmet("linearize needs k >= 2")
    limit = 2 * k - 2
    for p, es in sorted(h2.pair_edges.items()):
        if len(es) > limit:
            raise HypothesisUnmet(f"pair {p} lies in {len(es)} > 2k-2 hyperedges")
    present = set(h2.edges)
    worst = 0
    for e in h2.edges:
        if e not in present:
            continue
        gone = {f for p in edge_pairs(e) for f in h2.pair_edges[p] if f != e and f in present}
        present -= gone
        worst = max(worst, len(gone))
    out = h2.with_edges(present)
    if not is_linear(out) or (6 * k - 8) * len(out) < len(h2):
        raise ExtractionFailed(f"linearize lost its guarantee: {len(out)} of {len(h2)} kept")
    return out, worst


def linearize(h2: Hypergraph, k: int) -> Hypergraph:
    """Greedy sweep in edge order deleting everything that shares a pair.

    Requires codegrees <= 2k-2; keeps at least |h2|/(6k-8) hyperedges.
    """
    return _linearize(h2, k)[0]


def _triangle_graph(incident: dict[int, set[Edge]], on_pair: dict[Pair, Edge],
                    x: Edge, a: int, b: int) -> dict[Edge, list[Edge]]:
    """Berge triangles on pair (a, b) of ``x`` as edges between the a-side and
    the b-side hyperedge (a linear input makes each such pair unique)."""
    adj: dict[Edge, list[Edge]] = {}
    for ea in sorted(incident[a]):
        if ea == x:
            continue
        for d in ea:
            if d == a:
                continue
            eb = on_pair.get(pair(b, d))
            if eb is not None and eb != x and eb != ea and eb in incident[b]:
                adj.setdefault(ea, []).append(eb)
    return adj


def _book_from_triangles(x: Edge, a: int, b: int, adj: dict[Edge, list[Edge]],
                         k: int) -> BookCertificate | None:
    left = sorted(adj)
    match = max_matching([adj[e] for e in left])
    pages = []
    for ea, eb in zip(left, match):
        if eb is not None:
            (d,) = set(ea) & set(eb)
            pages.append(Page(d, ea, eb))
    if len(pages) < k:
        return None
    return BookCertificate((a, b), x, tuple(sorted(pages)[:k]))


def _prune(hl: Hypergraph, k: int) -> tuple[Hypergraph, int]:
    if k < 2:
        raise HypothesisUnmet("triangle_free_prune needs k >= 2")
    if not is_linear(hl):
        raise HypothesisUnmet("input is not linear")
    on_pair = {p: es[0] for p, es in hl.pair_edges.items()}
    incident: dict[int, set[Edge]] = {x: set(es) for x, es in enumerate(hl.vertex_edges)}

    for x in hl.edges:
        for a, b in edge_pairs(x):
            adj = _triangle_graph(incident, on_pair, x, a, b)
            cert = _book_from_triangles(x, a, b, adj, k)
            if cert is not None:
                assert verify_book(hl, cert)
                raise HypothesisUnmet(
                    f"pair {(a, b)} carries {k} hyperedge-disjoint Berge triangles", cert)

    present = set(hl.edges)
    worst = 0
    for x in hl.edges:
        if x not in present:
            continue
        gone: set[Edge] = set()
        for a, b in edge_pairs(x):
            adj = _triangle_graph(incident, on_pair, x, a, b)
            if not adj:
                continue
            cover = koenig_cover(sorted(adj), adj)
            for e in cover:
                for y in e:
                    incident[y].discard(e)
            gone |= cover
        present -= gone
        worst = max(worst, len(gone))
    out = hl.with_edges(present)
    if (find_berge_triangle(out) is not None or not is_linear(out)
            or (3 * k - 2) * len(out) < len(hl)):
        raise ExtractionFailed(f"triangle_free_prune lost its guarantee: {len(out)} of {len(hl)} kept")
    return out, worst


def triangle_free_prune(hl: Hypergraph, k: int) -> Hypergraph:
    """Destroy every Berge triangle of a linear hypergraph, keeping >= |hl|/(3k-2).

    Sweeping hyperedges in order, the Berge triangles sitting on each pair
    {a, b} of the current hyperedge form a bipartite graph between the
    hyperedges through a and those through b.  A minimum vertex cover of it
    (size <= k-1, else a B_k exists and is reported through
    :class:`HypothesisUnmet`) is deleted.  Hyperedges already swept lie in no
    remaining triangle, so they are never deleted later.
    """
    return _prune(hl, k)[0]


# -- end to end ----------------------------------------------------------------


class BoundCheck(NamedTuple):
    name: str
    lhs: int
    rhs: int
    passed: bool


def _le(name: str, lhs: int, rhs: int) -> BoundCheck:
    return BoundCheck(name, lhs, rhs, lhs <= rhs)


def _ge(name: str, lhs: int, rhs: int) -> BoundCheck:
    return BoundCheck(name, lhs, rhs, lhs >= rhs)


def _hg_json(h: Hypergraph | None) -> dict | None:
    if h is None:
        return None
    return {"n": h.n, "edges": [list(e) for e in h.edges]}


@dataclass
class PipelineReport:
    n: int
    m: int
    k: int
    e_h1: int
    e_h2: int
    red_edges: int
    branch: str
    certificate: BookCertificate | None = None
    reduced_linear: Hypergraph | None = None
    reduced_triangle_free: Hypergraph | None = None
    max_linearize_deletions: int | None = None
    max_prune_deletions: int | None = None
    bound_checks: list[BoundCheck] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "e_h1": self.e_h1,
            "e_h2": self.e_h2,
            "red_edges": self.red_edges,
            "branch": self.branch,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "reduced_linear": _hg_json(self.reduced_linear),
            "reduced_triangle_free": _hg_json(self.reduced_triangle_free),
            "max_linearize_deletions": self.max_linearize_deletions,
            "max_prune_deletions": self.max_prune_deletions,
            "bound_checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "pass": c.passed}
                for c in self.bound_checks
            ],
            "notes": list(self.notes),
        }


def _h2_heavy_pair(h: Hypergraph, h2: Iterable[Edge], k: int) -> Pair | None:
    count: dict[Pair, int] = {}
    for e in h2:
        for p in edge_pairs(e):
            count[p] = count.get(p, 0) + 1
    heavy = sorted(p for p, c in count.items() if c >= 2 * k - 1)
    return heavy[0] if heavy else None


def run_pipeline(h: Hypergraph, k: int) -> PipelineReport:
    """Partition, then extract a book or reduce H2, reporting every bound.

    Bounds on H1 are reported, not enforced: they only hold for B_k-free
    inputs.  Only :class:`ExtractionFailed` escapes.
    """
    if k < 2:
        raise ValueError("run_pipeline needs k >= 2")
    n = h.n
    part = partition(h, shadow(h))
    red = len(red_graph(h).edges)
    e1, e2 = len(part.h1), len(part.h2)
    rep = PipelineReport(n, len(h), k, e1, e2, red, branch="none")
    rep.bound_checks += [
        BoundCheck("e(H) = e(H1) + e(H2)", len(h), e1 + e2, len(h) == e1 + e2),
        _le("4 e(G1) <= n^2", 4 * red, n * n),
        _le("8 e(H1) <= n^2", 8 * e1, n * n),
    ]

    if 4 * red > n * n and n > 12 * k:
        rep.branch = "lemma1"
        rep.certificate = lemma1_extract(h, k)
        return rep

    uv = _h2_heavy_pair(h, part.h2, k)
    if uv is not None:
        rep.branch = "lemma2"
        rep.certificate = lemma2_extract(h, uv, k)
        return rep

    rep.branch = "reduce"
    h2 = h.with_edges(part.h2)
    lin, rep.max_linearize_deletions = _linearize(h2, k)
    rep.reduced_linear = lin
    rep.bound_checks.append(_ge("(6k-8) e(H2') >= e(H2)", (6 * k - 8) * len(lin), e2))
    try:
        tf, rep.max_prune_deletions = _prune(lin, k)
    except HypothesisUnmet as exc:
        if exc.certificate is None:
            raise ExtractionFailed(str(exc)) from exc
        rep.branch = "prune_book"
        rep.certificate = exc.certificate
        rep.notes.append(str(exc))
        return rep
    rep.reduced_triangle_free = tf
    rep.bound_checks.append(_ge("(3k-2) e(H2'') >= e(H2')", (3 * k - 2) * len(tf), len(lin)))
    return rep

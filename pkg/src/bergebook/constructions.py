"""Deterministic hypergraph generators.

* :func:`fig1` - the doubled complete bipartite construction, n^2/8 edges
  with no Berge triangle.
* :func:`bose_sts` - Steiner triple systems of order n = 3 (mod 6).
* :func:`random_hypergraph` - seeded random models.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the given integer; nothing reads global random state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Union

from .core import Edge, Hypergraph, build, edge_pairs


class BadOrder(ValueError):
    pass


class Infeasible(ValueError):
    pass


@dataclass(frozen=True)
class Fig1Layout:
    n_input: int
    x: range
    x2: range
    y: range
    y2: range

    @classmethod
    def for_n(cls, n: int) -> Fig1Layout:
        cx, fy = -(-n // 4), n // 4
        return cls(n, range(0, cx), range(cx, 2 * cx),
                   range(2 * cx, 2 * cx + fy), range(2 * cx + fy, 2 * cx + 2 * fy))

    @property
    def vertices(self) -> int:
        return 2 * len(self.x) + 2 * len(self.y)


def fig1_edge_count(n: int) -> int:
    return 2 * (-(-n // 4)) * (n // 4)


def fig1(n: int) -> Hypergraph:
    """Doubled K_{ceil(n/4), floor(n/4)}.

    Every bipartite edge x_i y_j becomes the two hyperedges
    {x_i, y_j, y'_j} and {y_j, y'_j, x'_i}.  Vertex ids: x, then x', then y,
    then y'.  When n = 1 (mod 4) the layout needs n + 1 vertices and the
    result has that many; when n = 3 (mod 4) one vertex stays isolated.
    """
    if n < 4:
        raise ValueError(f"fig1 needs n >= 4, got {n}")
    lay = Fig1Layout.for_n(n)
    edges = []
    for i in range(len(lay.x)):
        for j in range(len(lay.y)):
            yj, yj2 = lay.y[j], lay.y2[j]
            edges.append((lay.x[i], yj, yj2))
            edges.append((yj, yj2, lay.x2[i]))
    return build(max(n, lay.vertices), edges)


def bose_sts(n: int) -> Hypergraph:
    """Bose construction of a Steiner triple system on n = 6t + 3 points.

    Points are (x, level) with x in Z_m, m = n/3 odd, numbered x + m*level.
    The idempotent commutative quasigroup is x o y = (x + y)(m + 1)/2 mod m.
    """
    if n % 6 != 3:
        raise BadOrder(f"Bose construction needs n = 3 (mod 6), got {n}")
    m = n // 3
    half = (m + 1) // 2

    def pt(x: int, level: int) -> int:
        return x + m * level

    triples = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in combinations(range(m), 2):
        z = (x + y) * half % m
        for level in range(3):
            triples.append((pt(x, level), pt(y, level), pt(z, (level + 1) % 3)))
    return build(n, triples)


# -- random models ------------------------------------------------------------


@dataclass(frozen=True)
class UniformM:
    n: int
    m: int


@dataclass(frozen=True)
class LinearGreedy:
    n: int
    target_m: int


@dataclass(frozen=True)
class PlantedBook:
    n: int
    k: int
    noise_m: int


RandomModel = Union[UniformM, LinearGreedy, PlantedBook]


def _all_triples(n: int) -> list[Edge]:
    return list(combinations(range(n), 3))  # type: ignore[arg-type]


def random_hypergraph(model: RandomModel, seed: int) -> Hypergraph:
    rng = random.Random(seed)
    if isinstance(model, UniformM):
        total = comb(model.n, 3)
        if not 0 <= model.m <= total:
            raise Infeasible(f"m = {model.m} outside [0, C({model.n},3) = {total}]")
        return build(model.n, rng.sample(_all_triples(model.n), model.m))

    if isinstance(model, LinearGreedy):
        if model.target_m < 0:
            raise Infeasible("negative target_m")
        triples = _all_triples(model.n)
        rng.shuffle(triples)
        used: set[tuple[int, int]] = set()
        chosen = []
        for t in triples:
            if len(chosen) >= model.target_m:
                break
            ps = edge_pairs(t)
            if any(p in used for p in ps):
                continue
            used.update(ps)
            chosen.append(t)
        return build(model.n, chosen)

    if isinstance(model, PlantedBook):
        n, k = model.n, model.k
        if k < 1:
            raise Infeasible("planted book needs k >= 1")
        need = 3 + 3 * k
        if n < need:
            raise Infeasible(f"a planted B_{k} needs {need} vertices, n = {n}")
        vs = rng.sample(range(n), need)
        u, v, w = vs[:3]
        planted = {tuple(sorted((u, v, w)))}
        for i in range(k):
            x, y, z = vs[3 + 3 * i: 6 + 3 * i]
            planted.add(tuple(sorted((u, x, y))))
            planted.add(tuple(sorted((v, x, z))))
        rest = [t for t in _all_triples(n) if t not in planted]
        if model.noise_m > len(rest):
            raise Infeasible(f"noise_m = {model.noise_m} exceeds {len(rest)} free triples")
        return build(n, sorted(planted) + rng.sample(rest, model.noise_m))

    raise TypeError(f"unknown random model {model!r}")

"""Small bipartite matching routines (augmenting paths, Koenig covers).

Left vertices are indices ``0..len(options)-1``; ``options[i]`` lists the
right-hand items left vertex ``i`` may be matched to.  Right items are any
hashables.  Sizes here are tiny (a few dozen), so Kuhn's algorithm is enough.
"""

from __future__ import annotations

from typing import Hashable, Sequence, TypeVar

R = TypeVar("R", bound=Hashable)


def _augment(i: int, options: Sequence[Sequence[R]], owner: dict[R, int],
             match: list[R | None], seen: set[R]) -> bool:
    for r in options[i]:
        if r in seen:
            continue
        seen.add(r)
        j = owner.get(r)
        if j is None or _augment(j, options, owner, match, seen):
            owner[r] = i
            match[i] = r
            return True
    return False


def max_matching(options: Sequence[Sequence[R]],
                 order: Sequence[int] | None = None) -> list[R | None]:
    """Return ``match`` with ``match[i]`` the item assigned to left ``i``."""
    match: list[R | None] = [None] * len(options)
    owner: dict[R, int] = {}
    for i in (order if order is not None else range(len(options))):
        _augment(i, options, owner, match, set())
    return match


def saturating(options: Sequence[Sequence[R]]) -> list[R] | None:
    """A matching covering every left vertex, or ``None`` if Hall fails.

    Scarce left vertices are tried first; it only changes speed.
    """
    order = sorted(range(len(options)), key=lambda i: len(options[i]))
    match: list[R | None] = [None] * len(options)
    owner: dict[R, int] = {}
    for i in order:
        if not options[i] or not _augment(i, options, owner, match, set()):
            return None
    return match  # type: ignore[return-value]


def koenig_cover(left: Sequence[R], adj: dict[R, Sequence[R]]) -> set[R]:
    """Minimum vertex cover of a bipartite graph given by left-side adjacency.

    Standard construction: Z = vertices reachable from unmatched left vertices
    by alternating paths; cover = (L \\ Z) | (R & Z).
    """
    options = [list(adj.get(x, ())) for x in left]
    match = max_matching(options)
    owner = {r: i for i, r in enumerate(match) if r is not None}
    z_left: set[int] = set()
    z_right: set[R] = set()
    stack = [i for i, r in enumerate(match) if r is None]
    z_left.update(stack)
    while stack:
        i = stack.pop()
        for r in options[i]:
            if r in z_right or match[i] == r:
                continue
            z_right.add(r)
            j = owner.get(r)
            if j is not None and j not in z_left:
                z_left.add(j)
                stack.append(j)
    return {left[i] for i in range(len(left)) if i not in z_left} | z_right

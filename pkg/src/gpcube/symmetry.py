"""Brute-force automorphism groups of small graphs and orbits of edge sets."""

from __future__ import annotations

from typing import Optional, Sequence

from .edgeset import EdgeSet
from .errors import PreconditionError
from .graphs import Graph
from .metric import DistanceMatrix, all_pairs_distances

MAX_ORDER = 20


def automorphisms(g: Graph, d: Optional[DistanceMatrix] = None, max_order: int = MAX_ORDER) -> list[tuple[int, ...]]:
    """All automorphisms as image tuples ``perm[v]``, in lexicographic order.

    On a connected graph a bijection is an automorphism iff it preserves
    distances, so partial maps are pruned by distance to every vertex
    already placed; candidates must also share the sorted distance profile.
    """
    if g.order > max_order:
        raise PreconditionError(f"automorphism search limited to {max_order} vertices, graph has {g.order}")
    if d is None:
        d = all_pairs_distances(g)
    n = g.order
    D = d.dist.tolist()
    profile = [tuple(sorted(row)) for row in D]
    candidates = [[w for w in range(n) if profile[w] == profile[v]] for v in range(n)]
    perm = [-1] * n
    used = [False] * n
    out: list[tuple[int, ...]] = []

    def extend(v: int) -> None:
        if v == n:
            out.append(tuple(perm))
            return
        row = D[v]
        for w in candidates[v]:
            if used[w]:
                continue
            roww = D[w]
            if all(row[u] == roww[perm[u]] for u in range(v)):
                perm[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        perm[v] = -1

    extend(0)
    return out


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.order)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges)


def edge_permutation(g: Graph, perm: Sequence[int]) -> list[int]:
    """Edge index i -> index of the edge {perm[u], perm[v]}."""
    return [g.edge_index(perm[u], perm[v]) for u, v in g.edges]


def apply_to_edge_set(edge_perm: Sequence[int], x: EdgeSet) -> EdgeSet:
    return EdgeSet.from_indices(x.size, (edge_perm[e] for e in x))


def orbit_count(g: Graph, sets: Sequence[EdgeSet], autos: Sequence[Sequence[int]]) -> int:
    """Number of orbits of ``autos`` that meet the given edge sets."""
    edge_perms = [edge_permutation(g, p) for p in autos]
    canon = set()
    for x in sets:
        images = [apply_to_edge_set(ep, x).sort_key() for ep in edge_perms] or [x.sort_key()]
        canon.add(min(images))
    return len(canon)

"""Brute-force reference computations for cross-checking the fast paths.

Nothing here uses the distance-sum triple test or the branch and bound:
geodesics are listed one by one from BFS layers, and gp_e is found by
scanning every edge subset.  Only meant for graphs with a dozen vertices.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

import numpy as np

from .graphs import Graph

SUBSET_ORACLE_MAX_EDGES = 22


def _bfs_layers(g: Graph, s: int) -> list[int]:
    dist = [-1] * g.order
    dist[s] = 0
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def all_geodesics(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sequences of every shortest path with at least one edge, one direction per pair."""
    dist_from = [_bfs_layers(g, s) for s in range(g.order)]
    out = []
    for s in range(g.order):
        for t in range(s + 1, g.order):
            dt = dist_from[t]

            def walk(path):
                v = path[-1]
                if v == t:
                    out.append(tuple(path))
                    return
                for w in g.adj[v]:
                    if dt[w] == dt[v] - 1:
                        walk(path + [w])

            walk([s])
    return out


def geodesic_edge_sets(g: Graph) -> set[frozenset[int]]:
    return {frozenset(g.edge_index(a, b) for a, b in zip(p, p[1:])) for p in all_geodesics(g)}


def conflicting_triples(g: Graph) -> set[tuple[int, int, int]]:
    """Sorted index triples contained in the edge set of some shortest path."""
    triples = set()
    for edges in geodesic_edge_sets(g):
        if len(edges) >= 3:
            triples.update(combinations(sorted(edges), 3))
    return triples


def gp_e_by_subsets(g: Graph) -> int:
    """Largest edge subset containing no conflicting triple, by scanning all 2^M subsets."""
    m = g.size
    if m > SUBSET_ORACLE_MAX_EDGES:
        raise ValueError(f"subset oracle limited to {SUBSET_ORACLE_MAX_EDGES} edges")
    subsets = np.arange(1 << m, dtype=np.int64)
    bad = np.zeros(subsets.shape, dtype=bool)
    for a, b, c in conflicting_triples(g):
        t = (1 << a) | (1 << b) | (1 << c)
        bad |= (subsets & t) == t
    return int(np.bitwise_count(subsets[~bad]).max())


def is_gp_by_geodesics(g: Graph, edges) -> bool:
    chosen = set(edges)
    return all(len(chosen & s) <= 2 for s in geodesic_edge_sets(g))

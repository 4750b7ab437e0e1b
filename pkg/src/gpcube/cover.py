"""Covers of the edge set by shortest paths, and the upper bound they give.

A shortest path holds at most two edges of an edge general position set, so
k shortest paths covering all but u edges bound gp_e by 2k + u.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import PreconditionError
from .graphs import FIG3_COVER, Graph
from .metric import DistanceMatrix


@dataclass
class GeodesicCover:
    paths: list[tuple[int, ...]]
    covered: set[int] = field(default_factory=set)
    size: int = 0

    @property
    def uncovered(self) -> int:
        return self.size - len(self.covered)

    @property
    def bound(self) -> int:
        return 2 * len(self.paths) + self.uncovered


def path_edge_indices(g: Graph, path: Sequence[int]) -> list[int]:
    return [g.edge_index(a, b) for a, b in zip(path, path[1:])]


def is_geodesic(g: Graph, d: DistanceMatrix, path: Sequence[int]) -> bool:
    if len(path) < 1:
        return False
    if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
        return False
    return d(path[0], path[-1]) == len(path) - 1


def make_cover(g: Graph, d: DistanceMatrix, paths: Sequence[Sequence[int]]) -> GeodesicCover:
    covered: set[int] = set()
    for p in paths:
        if not is_geodesic(g, d, p):
            raise PreconditionError(f"path {list(p)} is not a shortest path")
        covered.update(path_edge_indices(g, p))
    return GeodesicCover([tuple(p) for p in paths], covered, g.size)


def fig3_cover(g: Graph, d: DistanceMatrix) -> GeodesicCover:
    """The four-path cover drawn for the cross-shaped example graph."""
    return make_cover(g, d, FIG3_COVER)


def _interval_best(g: Graph, D, s: int, t: int, uncovered: set[int]) -> tuple[int, tuple[int, ...]]:
    """Shortest s-t path with the most uncovered edges; lexicographically first on ties."""
    dst = int(D[s, t])
    if dst == 0:
        return 0, (s,)
    # value[v]: most uncovered edges on a shortest v-t path
    layers: list[list[int]] = [[] for _ in range(dst + 1)]
    for v in range(g.order):
        if int(D[s, v]) + int(D[v, t]) == dst:
            layers[int(D[v, t])].append(v)
    value = {t: 0}
    for k in range(1, dst + 1):
        for v in layers[k]:
            best = -1
            for w in g.adj[v]:
                if w in value and int(D[w, t]) == k - 1:
                    cand = value[w] + (g.edge_index(v, w) in uncovered)
                    if cand > best:
                        best = cand
            value[v] = best
    path = [s]
    v = s
    while v != t:
        k = int(D[v, t])
        for w in g.adj[v]:  # adj is sorted, so the first match is the smallest vertex
            if w in value and int(D[w, t]) == k - 1 and value[w] + (g.edge_index(v, w) in uncovered) == value[v]:
                path.append(w)
                v = w
                break
    return value[s], tuple(path)


def greedy_geodesic_cover(g: Graph, d: DistanceMatrix) -> GeodesicCover:
    """Repeatedly take the shortest path covering the most uncovered edges.

    Ties go to the lexicographically smallest end pair (s < t), then to the
    lexicographically smallest vertex sequence.
    """
    uncovered = set(range(g.size))
    paths = []
    D = d.dist
    while uncovered:
        best_gain, best_path = 0, None
        for s in range(g.order):
            for t in range(s + 1, g.order):
                if int(D[s, t]) <= best_gain:
                    continue
                gain, path = _interval_best(g, D, s, t, uncovered)
                if gain > best_gain:
                    best_gain, best_path = gain, path
        paths.append(best_path)
        uncovered.difference_update(path_edge_indices(g, best_path))
    return make_cover(g, d, paths)


def _is_maximal_pair(g: Graph, D, s: int, t: int) -> bool:
    dst = D[s, t]
    return all(D[s, w] <= dst for w in g.adj[t]) and all(D[w, t] <= dst for w in g.adj[s])


def maximal_geodesics(g: Graph, d: DistanceMatrix, per_pair_limit: Optional[int] = None) -> Iterator[list[int]]:
    """Edge-index lists of shortest paths that cannot be prolonged at either end.

    Every shortest path is a subpath of one of these.  ``per_pair_limit``
    caps how many are produced for each end pair.
    """
    D = d.dist
    for s in range(g.order):
        for t in range(s + 1, g.order):
            if not _is_maximal_pair(g, D, s, t):
                continue
            count = 0
            stack = [(s, [])]
            while stack:
                v, edges = stack.pop()
                if v == t:
                    yield edges
                    count += 1
                    if per_pair_limit is not None and count >= per_pair_limit:
                        break
                    continue
                k = D[v, t]
                for w in reversed(g.adj[v]):
                    if D[w, t] == k - 1:
                        stack.append((w, edges + [g.edge_index(v, w)]))

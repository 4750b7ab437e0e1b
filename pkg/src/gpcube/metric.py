"""Hop distances, bipartiteness and Hamming-isometry checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DisconnectedGraphError, PreconditionError
from .graphs import Graph

UNREACHED = np.iinfo(np.uint16).max


class DistanceMatrix:
    """Dense all-pairs hop distances (uint16) of a connected graph."""

    __slots__ = ("order", "dist", "signed")

    def __init__(self, dist: np.ndarray):
        self.dist = dist
        self.dist.setflags(write=False)
        self.order = dist.shape[0]
        # int32 copy so sums of distances cannot wrap
        self.signed = dist.astype(np.int32)
        self.signed.setflags(write=False)

    def __call__(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    def __getitem__(self, key):
        return self.dist[key]

    @property
    def diameter(self) -> int:
        return int(self.dist.max()) if self.order else 0

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self.dist, other.dist)


def bfs_row(g: Graph, source: int) -> np.ndarray:
    row = np.full(g.order, UNREACHED, dtype=np.uint16)
    row[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        x = queue.popleft()
        dx = row[x] + 1
        for y in adj[x]:
            if row[y] == UNREACHED:
                row[y] = dx
                queue.append(y)
    return row


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    if g.order >= UNREACHED:
        raise PreconditionError("graph too large for 16-bit distances")
    dist = np.empty((g.order, g.order), dtype=np.uint16)
    for s in range(g.order):
        row = bfs_row(g, s)
        missing = np.flatnonzero(row == UNREACHED)
        if missing.size:
            raise DisconnectedGraphError(s, int(missing[0]))
        dist[s] = row
    return DistanceMatrix(dist)


@dataclass
class BipartiteCheck:
    is_bipartite: bool
    coloring: Optional[list[int]] = None
    odd_cycle: Optional[list[int]] = field(default=None)

    def __bool__(self):
        return self.is_bipartite


def is_bipartite(g: Graph) -> BipartiteCheck:
    """Two-colour by BFS; on failure return an odd cycle as a closed vertex walk."""
    color = [-1] * g.order
    parent = [-1] * g.order
    for root in range(g.order):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    return BipartiteCheck(False, odd_cycle=_odd_cycle(parent, x, y))
    return BipartiteCheck(True, coloring=color)


def _odd_cycle(parent: list[int], x: int, y: int) -> list[int]:
    # x and y are BFS-tree vertices at equal depth joined by an edge.
    px, py = [x], [y]
    while px[-1] != py[-1]:
        px.append(parent[px[-1]])
        py.append(parent[py[-1]])
    # px ends at the common ancestor; walk x -> lca -> y -> x
    return px + py[-2::-1] + [x]


def label_matrix(g: Graph) -> np.ndarray:
    if not g.labels:
        raise PreconditionError("graph is unlabelled")
    return np.array([[c == "1" for c in lab] for lab in g.labels], dtype=np.uint8)


def hamming_matrix(g: Graph) -> np.ndarray:
    bits = label_matrix(g)
    out = np.zeros((g.order, g.order), dtype=np.int32)
    for k in range(bits.shape[1]):
        col = bits[:, k]
        out += col[:, None] != col[None, :]
    return out


def hamming_isometry_check(g: Graph, d: Optional[DistanceMatrix] = None) -> bool:
    """True iff graph distance equals label Hamming distance for every pair."""
    if not g.labels:
        raise PreconditionError("hamming_isometry_check needs a labelled graph")
    if d is None:
        d = all_pairs_distances(g)
    return bool(np.array_equal(hamming_matrix(g), d.dist.astype(np.int32)))

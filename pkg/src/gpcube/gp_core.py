"""Edge general position: common-geodesic triples, set verification, maximality.

Three edges lie on one shortest path iff, for some ordering e1, e2, e3 and
orientations ek = (ak, bk),

    d(a1, b3) == 3 + d(b1, a2) + d(b2, a3)

A walk whose length equals the distance of its ends is a shortest path, and
any shortest path through the three edges gives such an ordering.  Reversing
the walk gives the same test, so only the choice of middle edge and the
eight orientations matter (24 cases).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

import numpy as np

from .edgeset import EdgeSet
from .errors import NotPartialCubeError, PreconditionError
from .graphs import Edge, Graph
from .metric import DistanceMatrix
from .theta import ThetaPartition

_ORIENTATIONS = tuple(product((0, 1), repeat=3))


@dataclass(frozen=True)
class TripleWitness:
    """Oriented edges in path order and the geodesic's end vertices."""

    path_edges: tuple[Edge, Edge, Edge]
    start: int
    end: int
    length: int


def triple_on_common_geodesic(d: DistanceMatrix, e: Edge, f: Edge, g: Edge) -> Optional[TripleWitness]:
    """Witness that e, f, g share a shortest path, or None.

    Edges are vertex pairs.  The outer two edges of the witness are listed
    in ascending pair order, so results are reproducible.
    """
    e, f, g = (tuple(sorted(x)) for x in (e, f, g))
    if len({e, f, g}) != 3:
        raise PreconditionError("the three edges must be pairwise distinct")
    D = d.dist
    trio = sorted((e, f, g))
    for mid in range(3):
        first, last = (trio[k] for k in range(3) if k != mid)
        middle = trio[mid]
        for o1, o2, o3 in _ORIENTATIONS:
            a1, b1 = first[o1], first[1 - o1]
            a2, b2 = middle[o2], middle[1 - o2]
            a3, b3 = last[o3], last[1 - o3]
            total = int(D[a1, b3])
            if total == 3 + int(D[b1, a2]) + int(D[b2, a3]):
                return TripleWitness(((a1, b1), (a2, b2), (a3, b3)), a1, b3, total)
    return None


def common_geodesic_mask(d: DistanceMatrix, A: np.ndarray, B: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Vectorised triple test over rows of three (K, 2) endpoint arrays."""
    D = d.signed
    out = np.zeros(len(A), dtype=bool)
    for P, Mid, Q in ((B, A, C), (A, B, C), (A, C, B)):
        for o1, o2, o3 in _ORIENTATIONS:
            lhs = D[P[:, o1], Q[:, 1 - o3]]
            rhs = 3 + D[P[:, 1 - o1], Mid[:, o2]] + D[Mid[:, 1 - o2], Q[:, o3]]
            out |= lhs == rhs
    return out


def _ends(g: Graph, idx) -> np.ndarray:
    return np.asarray(g.edges, dtype=np.intp).reshape(-1, 2)[np.asarray(idx, dtype=np.intp)]


def conflict_triples(g: Graph, d: DistanceMatrix, chunk: int = 200_000) -> np.ndarray:
    """All index triples i < j < k whose edges lie on a common shortest path."""
    m = g.size
    if m < 3:
        return np.zeros((0, 3), dtype=np.intp)
    ends = np.asarray(g.edges, dtype=np.intp)
    found = []
    batch = []
    for i in range(m - 2):
        jj, kk = np.triu_indices(m - i - 1, 1)
        tri = np.column_stack((np.full(len(jj), i), jj + i + 1, kk + i + 1))
        batch.append(tri)
        if sum(len(b) for b in batch) >= chunk or i == m - 3:
            T = np.concatenate(batch)
            batch = []
            hit = common_geodesic_mask(d, ends[T[:, 0]], ends[T[:, 1]], ends[T[:, 2]])
            found.append(T[hit])
    return np.concatenate(found)


@dataclass
class GpVerdict:
    is_gp: bool
    violating_triple: Optional[tuple[int, int, int]] = None
    witness: Optional[TripleWitness] = None

    def __bool__(self):
        return self.is_gp


def is_edge_gp_set(g: Graph, d: DistanceMatrix, x: EdgeSet) -> GpVerdict:
    """Check every triple of X; report the lexicographically first violation."""
    idx = x.indices()
    n = len(idx)
    if n < 3:
        return GpVerdict(True)
    ends = _ends(g, idx)
    for a in range(n - 2):
        jj, kk = np.triu_indices(n - a - 1, 1)
        jj, kk = jj + a + 1, kk + a + 1
        hit = common_geodesic_mask(d, np.repeat(ends[a:a + 1], len(jj), axis=0), ends[jj], ends[kk])
        if hit.any():
            t = int(np.argmax(hit))
            triple = (idx[a], idx[jj[t]], idx[kk[t]])
            witness = triple_on_common_geodesic(d, *(g.edges[i] for i in triple))
            return GpVerdict(False, triple, witness)
    return GpVerdict(True)


def can_extend(g: Graph, d: DistanceMatrix, x: EdgeSet, e: int) -> bool:
    """Whether X + {e} stays in general position, given X already is."""
    if e in x:
        raise PreconditionError(f"edge {e} is already in the set")
    idx = x.indices()
    if len(idx) < 2:
        return True
    ends = _ends(g, idx)
    jj, kk = np.triu_indices(len(idx), 1)
    probe = np.repeat(_ends(g, [e]), len(jj), axis=0)
    return not common_geodesic_mask(d, probe, ends[jj], ends[kk]).any()


def is_maximal_edge_gp_set(g: Graph, d: DistanceMatrix, x: EdgeSet) -> bool:
    if not is_edge_gp_set(g, d, x):
        return False
    return not any(can_extend(g, d, x, e) for e in range(g.size) if e not in x)


def extendable_edges(g: Graph, d: DistanceMatrix, x: EdgeSet) -> list[int]:
    """Edges outside X that could be added without breaking general position."""
    return [e for e in range(g.size) if e not in x and can_extend(g, d, x, e)]


def class_pair_is_gp(g: Graph, d: DistanceMatrix, part: ThetaPartition, i: int, j: int) -> bool:
    if not part.transitive:
        raise NotPartialCubeError("Θ is not transitive on this graph; it is not a partial cube")
    return is_edge_gp_set(g, d, part.union(i, j)).is_gp


def failing_class_pairs(g: Graph, d: DistanceMatrix, part: ThetaPartition) -> list[tuple[int, int]]:
    """Class pairs whose union is not in general position; empty when all pass."""
    return [
        (i, j)
        for i, j in combinations(range(1, len(part) + 1), 2)
        if not class_pair_is_gp(g, d, part, i, j)
    ]

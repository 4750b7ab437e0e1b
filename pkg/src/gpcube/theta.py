"""Djokovic-Winkler relation, its classes, and partial-cube recognition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InternalConsistencyError, NotPartialCubeError, PreconditionError
from .edgeset import EdgeSet
from .graphs import Edge, Graph, fibonacci_cube, lucas_cube
from .metric import DistanceMatrix, all_pairs_distances, hamming_isometry_check, is_bipartite
from .sequences import fibonacci


def theta_related(d: DistanceMatrix, e: Edge, f: Edge) -> bool:
    """xy Θ uv  iff  d(x,u) + d(y,v) != d(x,v) + d(y,u)."""
    x, y = e
    u, v = f
    D = d.dist
    return int(D[x, u]) + int(D[y, v]) != int(D[x, v]) + int(D[y, u])


def relation_matrix(g: Graph, d: DistanceMatrix) -> np.ndarray:
    """Boolean M x M matrix of the raw relation over edge indices."""
    if not g.edges:
        return np.zeros((0, 0), dtype=bool)
    ends = np.array(g.edges, dtype=np.intp)
    x, y = ends[:, 0], ends[:, 1]
    D = d.signed
    lhs = D[np.ix_(x, x)] + D[np.ix_(y, y)]
    rhs = D[np.ix_(x, y)] + D[np.ix_(y, x)]
    return lhs != rhs


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


@dataclass
class ThetaPartition:
    """Classes of the transitive closure of Θ.

    ``classes[k]`` holds edge indices; ``coordinates[k]`` is the 1-based label
    coordinate flipped by that class when the graph's labels are an isometric
    embedding, otherwise ``coordinates`` is None.  Public class numbering is
    1-based, matching Θ_1 .. Θ_n.
    """

    size: int
    classes: list[tuple[int, ...]]
    coordinates: Optional[list[int]]
    transitive: bool
    class_of: list[int]

    def __len__(self):
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def theta(self, i: int) -> EdgeSet:
        if not 1 <= i <= len(self.classes):
            raise PreconditionError(f"class index {i} outside 1..{len(self.classes)}")
        return EdgeSet.from_indices(self.size, self.classes[i - 1])

    def union(self, *indices: int) -> EdgeSet:
        out = EdgeSet.empty(self.size)
        for i in indices:
            out = out | self.theta(i)
        return out

    def class_number(self, edge: int) -> int:
        """1-based class containing the given edge index."""
        return self.class_of[edge] + 1


def theta_partition(g: Graph, d: Optional[DistanceMatrix] = None) -> ThetaPartition:
    if d is None:
        d = all_pairs_distances(g)
    check = is_bipartite(g)
    if not check:
        raise NotPartialCubeError(
            f"graph is not bipartite (odd cycle {check.odd_cycle}); Θ-classes are undefined"
        )
    rel = relation_matrix(g, d)
    m = g.size
    uf = _UnionFind(m)
    rows, cols = np.nonzero(np.triu(rel, 1))
    for a, b in zip(rows.tolist(), cols.tolist()):
        uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for e in range(m):
        groups.setdefault(uf.find(e), []).append(e)
    classes = [tuple(v) for v in groups.values()]

    roots = np.array([uf.find(e) for e in range(m)])
    closure = roots[:, None] == roots[None, :]
    transitive = bool(np.array_equal(closure, rel | np.eye(m, dtype=bool)))

    coordinates = None
    if g.labels and hamming_isometry_check(g, d):
        coordinates = []
        for cls in classes:
            flips = {_flipped_coordinate(g, e) for e in cls}
            if len(flips) != 1:
                raise InternalConsistencyError(
                    f"a Θ-class flips several label coordinates {sorted(flips)}"
                )
            coordinates.append(flips.pop())
        order = sorted(range(len(classes)), key=lambda k: coordinates[k])
        classes = [classes[k] for k in order]
        coordinates = [coordinates[k] for k in order]
    else:
        classes.sort(key=min)

    class_of = [0] * m
    for k, cls in enumerate(classes):
        for e in cls:
            class_of[e] = k
    return ThetaPartition(m, classes, coordinates, transitive, class_of)


def _flipped_coordinate(g: Graph, e: int) -> int:
    u, v = g.edges[e]
    a, b = g.labels[u], g.labels[v]
    return next(k for k in range(len(a)) if a[k] != b[k]) + 1


def is_partial_cube(g: Graph, d: Optional[DistanceMatrix] = None) -> bool:
    """Winkler's test: bipartite and Θ transitive.

    Labelled inputs are cross-checked: isometric labels certify a partial
    cube, so a negative answer alongside them is reported as a bug.
    """
    if d is None:
        d = all_pairs_distances(g)
    if not is_bipartite(g):
        answer = False
    else:
        answer = theta_partition(g, d).transitive
    if g.labels and not answer and hamming_isometry_check(g, d):
        raise InternalConsistencyError(
            "labels embed the graph isometrically in a hypercube but the Θ test says otherwise"
        )
    return answer


@dataclass
class FormulaCheck:
    ok: bool
    sizes: list[int]
    expected: list[int]

    def __bool__(self):
        return self.ok


def expected_class_sizes(family: str, n: int) -> list[int]:
    if family == "fibonacci":
        return [fibonacci(i) * fibonacci(n - i + 1) for i in range(1, n + 1)]
    if family == "lucas":
        return [fibonacci(n - 1)] * n
    raise PreconditionError(f"family must be 'fibonacci' or 'lucas', got {family!r}")


def class_size_formula_check(family: str, n: int, graph: Optional[Graph] = None) -> FormulaCheck:
    """Compare computed Θ-class sizes with F_i F_{n-i+1} (Fibonacci) or F_{n-1} (Lucas).

    ``graph`` overrides the generated cube, which lets callers inject a
    deliberately wrong graph.
    """
    expected = expected_class_sizes(family, n)
    if family == "lucas" and n < 2:
        raise PreconditionError("the Lucas formula needs n >= 2")
    if graph is None:
        graph = fibonacci_cube(n) if family == "fibonacci" else lucas_cube(n)
    part = theta_partition(graph)
    if part.coordinates is None:
        return FormulaCheck(False, part.sizes(), expected)
    sizes = [0] * n
    for coord, cls in zip(part.coordinates, part.classes):
        if 1 <= coord <= n:
            sizes[coord - 1] = len(cls)
    return FormulaCheck(sizes == expected and len(part) == n, sizes, expected)


def best_class_pair(part: ThetaPartition) -> tuple[int, int, int]:
    """Return (i, j, |Θ_i| + |Θ_j|) maximal, lexicographically first on ties."""
    sizes = part.sizes()
    if len(sizes) < 2:
        raise PreconditionError("need at least two Θ-classes")
    best = None
    for i in range(len(sizes)):
        for j in range(i + 1, len(sizes)):
            s = sizes[i] + sizes[j]
            if best is None or s > best[2]:
                best = (i + 1, j + 1, s)
    return best

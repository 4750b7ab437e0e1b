"""Simple undirected graphs, the cube families, and the line-oriented file format.

Vertices are ``0..N-1``.  Edges are stored as ``(u, v)`` pairs with ``u < v``
and sorted, so the edge index of a pair is its position in that sorted list.
Labelled graphs carry one bitstring per vertex (a hypercube embedding).
"""

from __future__ import annotations

import io
import random
from collections import deque
from typing import Iterable, Optional, Sequence, TextIO

from .errors import DisconnectedGraphError, GraphFormatError, PreconditionError

Edge = tuple[int, int]


class Graph:
    """Immutable simple undirected graph with optional bitstring labels."""

    __slots__ = ("order", "edges", "labels", "adj", "_index", "name")

    def __init__(
        self,
        order: int,
        edges: Iterable[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        *,
        allow_disconnected: bool = False,
        name: str = "",
    ):
        if order < 0:
            raise PreconditionError("order must be nonnegative")
        canon = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise PreconditionError(f"edge ({u}, {v}) references a vertex outside 0..{order - 1}")
            pair = (u, v) if u < v else (v, u)
            if pair in canon:
                raise PreconditionError(f"duplicate edge {pair}")
            canon.add(pair)
        self.order = order
        self.edges: tuple[Edge, ...] = tuple(sorted(canon))
        self._index = {e: i for i, e in enumerate(self.edges)}
        adj: list[list[int]] = [[] for _ in range(order)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.labels: Optional[tuple[str, ...]] = None
        if labels is not None:
            self.labels = tuple(labels)
            self._check_labels()
        self.name = name
        if not allow_disconnected:
            self.require_connected()

    def _check_labels(self) -> None:
        labels = self.labels
        if len(labels) != self.order:
            raise PreconditionError(f"expected {self.order} labels, got {len(labels)}")
        if self.order == 0:
            return
        width = len(labels[0])
        for v, lab in enumerate(labels):
            if len(lab) != width or width == 0:
                raise PreconditionError(f"label of vertex {v} has length {len(lab)}, expected {width}")
            if set(lab) - {"0", "1"}:
                raise PreconditionError(f"label of vertex {v} is not a bitstring: {lab!r}")
        if len(set(labels)) != len(labels):
            raise PreconditionError("labels are not pairwise distinct")
        for u, v in self.edges:
            if hamming(labels[u], labels[v]) != 1:
                raise PreconditionError(
                    f"edge ({u}, {v}) joins labels {labels[u]} and {labels[v]} "
                    "which do not differ in exactly one bit"
                )

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def width(self) -> int:
        """Label length, or 0 for unlabelled graphs."""
        if not self.labels:
            return 0
        return len(self.labels[0])

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._index[(u, v) if u < v else (v, u)]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def vertex_of_label(self, label: str) -> int:
        if self.labels is None:
            raise PreconditionError("graph is unlabelled")
        return self.labels.index(label)

    def unreachable_pair(self) -> Optional[tuple[int, int]]:
        """Return ``(0, v)`` for some vertex v not reachable from 0, or None."""
        if self.order <= 1:
            return None
        seen = [False] * self.order
        seen[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        for v, s in enumerate(seen):
            if not s:
                return (0, v)
        return None

    def is_connected(self) -> bool:
        return self.unreachable_pair() is None

    def require_connected(self) -> None:
        pair = self.unreachable_pair()
        if pair is not None:
            raise DisconnectedGraphError(*pair)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.order, self.edges, self.labels) == (other.order, other.edges, other.labels)

    def __hash__(self):
        return hash((self.order, self.edges, self.labels))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Graph{tag} order={self.order} size={self.size}{' labelled' if self.labels else ''}>"


def hamming(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


def is_fibonacci_string(s: str) -> bool:
    return "11" not in s


def is_lucas_string(s: str) -> bool:
    return is_fibonacci_string(s) and not (s[0] == "1" and s[-1] == "1")


def _from_labels(labels: list[str], name: str) -> Graph:
    # Vertex order: labels as integers, leftmost bit most significant.
    labels = sorted(labels, key=lambda s: int(s, 2))
    where = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for i, lab in enumerate(labels):
        for k, bit in enumerate(lab):
            if bit == "0":
                j = where.get(lab[:k] + "1" + lab[k + 1:])
                if j is not None:
                    edges.append((i, j))
    return Graph(len(labels), edges, labels, name=name)


def _require_positive(value: int, what: str, minimum: int = 1) -> None:
    if not isinstance(value, int) or value < minimum:
        raise PreconditionError(f"{what} must be an integer >= {minimum}, got {value!r}")


def hypercube(r: int) -> Graph:
    _require_positive(r, "r")
    return _from_labels([format(x, f"0{r}b") for x in range(2**r)], f"Q{r}")


def fibonacci_strings(n: int) -> list[str]:
    """All length-n binary strings without two consecutive 1s."""
    shorter, current = [""], ["0", "1"]
    if n == 0:
        return shorter
    for _ in range(n - 1):
        shorter, current = current, ["0" + s for s in current] + ["10" + s for s in shorter]
    return current


def fibonacci_cube(n: int) -> Graph:
    _require_positive(n, "n")
    return _from_labels(fibonacci_strings(n), f"Gamma{n}")


def lucas_cube(n: int) -> Graph:
    _require_positive(n, "n")
    return _from_labels([s for s in fibonacci_strings(n) if is_lucas_string(s)], f"Lambda{n}")


def path_graph(k: int) -> Graph:
    """P_k, labelled by the unary prefix code i -> 1^i 0^(k-1-i) when k >= 2."""
    _require_positive(k, "k")
    labels = ["1" * i + "0" * (k - 1 - i) for i in range(k)] if k >= 2 else None
    return Graph(k, [(i, i + 1) for i in range(k - 1)], labels, name=f"P{k}")


def cycle_graph(k: int) -> Graph:
    _require_positive(k, "k", 3)
    return Graph(k, [(i, (i + 1) % k) for i in range(k)], name=f"C{k}")


def complete_bipartite(a: int, b: int) -> Graph:
    _require_positive(a, "a")
    _require_positive(b, "b")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a},{b}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with vertex (x, y) numbered x * |V(H)| + y.

    Labels are concatenated when both factors carry them.
    """
    g.require_connected()
    h.require_connected()
    nh = h.order
    edges = []
    for x in range(g.order):
        for y1, y2 in h.edges:
            edges.append((x * nh + y1, x * nh + y2))
    for x1, x2 in g.edges:
        for y in range(nh):
            edges.append((x1 * nh + y, x2 * nh + y))
    labels = None
    if g.labels and h.labels:
        labels = [g.labels[x] + h.labels[y] for x in range(g.order) for y in range(nh)]
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return Graph(g.order * nh, edges, labels, name=name)


def grid(r: int) -> Graph:
    _require_positive(r, "r", 2)
    p = path_graph(r)
    g = cartesian_product(p, p)
    g.name = f"P{r}xP{r}"
    return g


# Vertex coordinates of the cross-shaped example, numbered x1..x12 -> 0..11.
FIG3_COORDS = (
    (1, 0), (2, 0),
    (0, 1), (1, 1), (2, 1), (3, 1),
    (0, 2), (1, 2), (2, 2), (3, 2),
    (1, 3), (2, 3),
)

# Four geodesics that cover every edge of the cross-shaped example.
FIG3_COVER = (
    (0, 3, 7, 10, 11),
    (0, 1, 4, 8, 11),
    (2, 6, 7, 8, 9),
    (2, 3, 4, 5, 9),
)


def paper_fig3_graph() -> Graph:
    """Two rows of four unit squares' vertices plus a pair above and below the middle columns."""
    where = {c: i for i, c in enumerate(FIG3_COORDS)}
    edges = []
    for (x, y), i in where.items():
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in where:
                edges.append((i, where[nb]))
    return Graph(len(FIG3_COORDS), edges, name="fig3")


FAMILIES = ("hypercube", "fibonacci", "lucas", "grid", "fig3")


def family_graph(family: str, n: Optional[int] = None) -> Graph:
    if family == "fig3":
        return paper_fig3_graph()
    builders = {"hypercube": hypercube, "fibonacci": fibonacci_cube, "lucas": lucas_cube, "grid": grid}
    if family not in builders:
        raise PreconditionError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if n is None:
        raise PreconditionError(f"family {family!r} needs a size parameter n")
    return builders[family](n)


def random_cube_cactus(rng: random.Random, blocks: int) -> Graph:
    """Glue ``blocks`` copies of K2, C4 or Q3 at single vertices, tree-like.

    Every block is a partial cube and gluing at a vertex preserves that,
    so the result is a partial cube whose blocks are exactly the pieces.
    """
    pieces = (path_graph(2), cycle_graph(4), hypercube(3))
    order = 0
    edges: list[Edge] = []
    for k in range(blocks):
        piece = rng.choice(pieces)
        if k == 0:
            mapping = list(range(piece.order))
            order = piece.order
        else:
            anchor = rng.randrange(order)
            glue = rng.randrange(piece.order)
            mapping = []
            for v in range(piece.order):
                if v == glue:
                    mapping.append(anchor)
                else:
                    mapping.append(order)
                    order += 1
        edges.extend((mapping[u], mapping[v]) for u, v in piece.edges)
    return Graph(order, edges, name=f"cactus{blocks}")


# -- file format -----------------------------------------------------------


def save_graph(g: Graph, sink: TextIO) -> None:
    sink.write(f"p {g.order} {g.size}\n")
    if g.labels:
        for v, lab in enumerate(g.labels):
            sink.write(f"l {v} {lab}\n")
    for u, v in g.edges:
        sink.write(f"e {u} {v}\n")


def dumps_graph(g: Graph) -> str:
    buf = io.StringIO()
    save_graph(g, buf)
    return buf.getvalue()


def _ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def load_graph(source: TextIO, *, allow_disconnected: bool = False) -> Graph:
    header = None
    labels: dict[int, str] = {}
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(source, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *fields = line.split()
        if tag == "p":
            if header is not None:
                raise GraphFormatError("second 'p' header", lineno)
            if len(fields) != 2:
                raise GraphFormatError("header must be 'p <N> <M>'", lineno)
            header = _ints(fields, lineno)
            if min(header) < 0:
                raise GraphFormatError("negative count in header", lineno)
            continue
        if header is None:
            raise GraphFormatError("missing 'p <N> <M>' header before data", lineno)
        n = header[0]
        if tag == "l":
            if len(fields) != 2:
                raise GraphFormatError("label line must be 'l <v> <bitstring>'", lineno)
            (v,) = _ints(fields[:1], lineno)
            lab = fields[1]
            if not 0 <= v < n:
                raise GraphFormatError(f"label for vertex {v} outside 0..{n - 1}", lineno)
            if v in labels:
                raise GraphFormatError(f"vertex {v} labelled twice", lineno)
            if set(lab) - {"0", "1"}:
                raise GraphFormatError(f"label {lab!r} is not a bitstring", lineno)
            if labels and len(lab) != len(next(iter(labels.values()))):
                raise GraphFormatError(f"label {lab!r} has a different length from earlier labels", lineno)
            labels[v] = lab
        elif tag == "e":
            if len(fields) != 2:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            u, v = _ints(fields, lineno)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) outside 0..{n - 1}", lineno)
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise GraphFormatError(f"duplicate edge {pair}", lineno)
            seen.add(pair)
            edges.append(pair)
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise GraphFormatError("empty graph file: no 'p' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(edges)} were given")
    if labels and len(labels) != n:
        raise GraphFormatError(f"{len(labels)} of {n} vertices labelled; label all or none")
    label_list = [labels[v] for v in range(n)] if labels else None
    try:
        return Graph(n, edges, label_list, allow_disconnected=allow_disconnected)
    except PreconditionError as exc:
        raise GraphFormatError(str(exc)) from exc


def loads_graph(text: str, *, allow_disconnected: bool = False) -> Graph:
    return load_graph(io.StringIO(text), allow_disconnected=allow_disconnected)


def random_connected_bipartite(rng: random.Random, max_order: int = 12, density: Optional[float] = None) -> Graph:
    """Connected bipartite graph: a random spanning tree across the two sides plus extra cross edges.

    Without ``density`` each graph draws its own cross-edge probability from [0.05, 0.5].
    """
    if density is None:
        density = rng.uniform(0.05, 0.5)
    n = rng.randint(2, max_order)
    left = rng.randint(1, n - 1)
    side = [0] * left + [1] * (n - left)
    rng.shuffle(side)
    a = [v for v in range(n) if side[v] == 0]
    b = [v for v in range(n) if side[v] == 1]
    edges = set()
    # grow a spanning tree by attaching each new vertex to an earlier one of the other side
    order = [a[0], b[0]] + rng.sample(a[1:] + b[1:], n - 2)
    edges.add((min(order[0], order[1]), max(order[0], order[1])))
    placed = order[:2]
    for v in order[2:]:
        u = rng.choice([w for w in placed if side[w] != side[v]])
        edges.add((min(u, v), max(u, v)))
        placed.append(v)
    for u in a:
        for v in b:
            if rng.random() < density:
                edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges), name=f"bip{n}")

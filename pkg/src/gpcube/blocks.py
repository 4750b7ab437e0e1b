"""Blocks, cut vertices, and edge general position sets built from end blocks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Optional, Sequence, Union

from .edgeset import EdgeSet
from .errors import InternalConsistencyError, IsometryError, NotPartialCubeError, PreconditionError
from .gp_core import is_edge_gp_set
from .graphs import Graph
from .metric import DistanceMatrix, all_pairs_distances
from .theta import ThetaPartition, relation_matrix, theta_partition


@dataclass
class BlockDecomposition:
    blocks: list[tuple[int, ...]]  # edge indices, ascending
    cut_vertices: list[int]
    end_blocks: list[int]  # positions in ``blocks``
    block_vertices: list[frozenset[int]]

    def block_of_edge(self) -> dict[int, int]:
        return {e: b for b, edges in enumerate(self.blocks) for e in edges}


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan low-point DFS, iterative; blocks ordered by smallest edge index."""
    g.require_connected()
    n = g.order
    disc = [-1] * n
    low = [0] * n
    blocks: list[list[int]] = []
    cut = set()
    stack: list[int] = []  # edge indices
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        # frame: (vertex, parent edge index, iterator position)
        frames = [(root, -1, 0)]
        while frames:
            v, pe, pos = frames[-1]
            nbrs = g.adj[v]
            if pos < len(nbrs):
                frames[-1] = (v, pe, pos + 1)
                w = nbrs[pos]
                e = g.edge_index(v, w)
                if e == pe:
                    continue
                if disc[w] == -1:
                    stack.append(e)
                    disc[w] = low[w] = clock
                    clock += 1
                    if v == root:
                        root_children += 1
                    frames.append((w, e, 0))
                elif disc[w] < disc[v]:
                    stack.append(e)
                    low[v] = min(low[v], disc[w])
                continue
            frames.pop()
            if not frames:
                break
            u = frames[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                if u != root:
                    cut.add(u)
                comp = []
                while True:
                    e = stack.pop()
                    comp.append(e)
                    if e == pe:
                        break
                blocks.append(sorted(comp))
        if root_children > 1:
            cut.add(root)

    blocks.sort(key=lambda b: b[0])
    block_vertices = [frozenset(x for e in b for x in g.edges[e]) for b in blocks]
    if len(blocks) == 1:
        end_blocks = [0]
    else:
        end_blocks = [k for k, vs in enumerate(block_vertices) if len(vs & cut) == 1]
    return BlockDecomposition([tuple(b) for b in blocks], sorted(cut), end_blocks, block_vertices)


Selector = Union[None, Mapping[int, int], Callable[[int, list[int]], int]]


def end_block_gp_set(
    g: Graph,
    d: Optional[DistanceMatrix] = None,
    choice: Selector = None,
    part: Optional[ThetaPartition] = None,
) -> EdgeSet:
    """Union of one Θ-class per end block.

    ``choice`` maps an end-block position to a 1-based class number, or is a
    callable ``(block, eligible_classes) -> class``.  The default takes the
    largest class meeting the block, lowest number on ties.  The result is
    verified to be in general position before it is returned.
    """
    if d is None:
        d = all_pairs_distances(g)
    if part is None:
        part = theta_partition(g, d)
    if not part.transitive:
        raise NotPartialCubeError("end-block construction needs a partial cube")
    dec = block_decomposition(g)
    sizes = part.sizes()
    out = EdgeSet.empty(g.size)
    for b in dec.end_blocks:
        eligible = sorted({part.class_number(e) for e in dec.blocks[b]})
        if choice is None:
            k = max(eligible, key=lambda c: (sizes[c - 1], -c))
        elif callable(choice):
            k = choice(b, eligible)
        else:
            k = choice[b]
        if k not in eligible:
            raise PreconditionError(f"class {k} has no edge in end block {b}; eligible: {eligible}")
        out = out | part.theta(k)
    verdict = is_edge_gp_set(g, d, out)
    if not verdict:
        raise InternalConsistencyError(
            f"end-block union is not in general position: triple {verdict.violating_triple}"
        )
    return out


def induced_subgraph(g: Graph, vertices: Sequence[int], edges: Optional[Sequence[int]] = None) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` (renumbered in the given order) and the host edge index of each of its edges.

    Without ``edges`` the subgraph is induced; otherwise it uses just those host edges.
    """
    verts = list(dict.fromkeys(vertices))
    local = {v: i for i, v in enumerate(verts)}
    if edges is None:
        host = [e for e, (u, v) in enumerate(g.edges) if u in local and v in local]
    else:
        host = sorted(set(edges))
        for e in host:
            u, v = g.edges[e]
            if u not in local or v not in local:
                raise PreconditionError(f"edge {g.edges[e]} leaves the given vertex set")
    host_of = {}
    for e in host:
        a, b = (local[x] for x in g.edges[e])
        host_of[(min(a, b), max(a, b))] = e
    sub = Graph(len(verts), list(host_of), allow_disconnected=True)
    # Graph re-sorts its edges, so look each one up again
    return sub, [host_of[pair] for pair in sub.edges]


def cross_block_theta_check(
    g: Graph,
    d: Optional[DistanceMatrix],
    vertices: Sequence[int],
    edges: Optional[Sequence[int]] = None,
) -> bool:
    """For an isometric subgraph H, no two edges from different blocks of H are Θ-related in G."""
    if d is None:
        d = all_pairs_distances(g)
    h, host = induced_subgraph(g, vertices, edges)
    verts = list(dict.fromkeys(vertices))
    pair = h.unreachable_pair()
    if pair is not None:
        u, v = pair
        raise IsometryError(verts[u], verts[v], "inf", d(verts[u], verts[v]))
    dh = all_pairs_distances(h)
    for a, b in combinations(range(h.order), 2):
        if dh(a, b) != d(verts[a], verts[b]):
            raise IsometryError(verts[a], verts[b], dh(a, b), d(verts[a], verts[b]))
    if h.size < 2:
        return True
    dec = block_decomposition(h)
    block = dec.block_of_edge()
    rel = relation_matrix(g, d)
    for i, j in combinations(range(h.size), 2):
        if block[i] != block[j] and rel[host[i], host[j]]:
            return False
    return True

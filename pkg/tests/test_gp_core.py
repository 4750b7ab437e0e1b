import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import to_nx
from gpcube import graphs
from gpcube.edgeset import EdgeSet
from gpcube.errors import NotPartialCubeError, PreconditionError
from gpcube.gp_core import (
    can_extend,
    class_pair_is_gp,
    conflict_triples,
    extendable_edges,
    failing_class_pairs,
    is_edge_gp_set,
    is_maximal_edge_gp_set,
    triple_on_common_geodesic,
)
from gpcube.metric import all_pairs_distances
from gpcube.oracles import all_geodesics, conflicting_triples, is_gp_by_geodesics
from gpcube.theta import theta_partition


def nx_conflicts(g):
    """Triples on a common shortest path, from networkx's own path enumeration."""
    h = to_nx(g)
    out = set()
    for s, t in combinations(range(g.order), 2):
        for path in nx.all_shortest_paths(h, s, t):
            edges = sorted(g.edge_index(a, b) for a, b in zip(path, path[1:]))
            out.update(combinations(edges, 3))
    return out


def check_witness(g, d, edges, w):
    (a1, b1), (a2, b2), (a3, b3) = w.path_edges
    assert {tuple(sorted(p)) for p in w.path_edges} == {tuple(sorted(e)) for e in edges}
    assert d(w.start, w.end) == w.length == 3 + d(b1, a2) + d(b2, a3)
    assert (w.start, w.end) == (a1, b3)


def test_examples():
    p4 = graphs.path_graph(4)
    d = all_pairs_distances(p4)
    w = triple_on_common_geodesic(d, (0, 1), (1, 2), (2, 3))
    assert w is not None and {w.start, w.end} == {0, 3}
    c6 = graphs.cycle_graph(6)
    assert triple_on_common_geodesic(all_pairs_distances(c6), (0, 1), (2, 3), (4, 5)) is None
    q3 = graphs.hypercube(3)
    v = q3.vertex_of_label
    w = triple_on_common_geodesic(all_pairs_distances(q3), (v("000"), v("001")), (v("001"), v("011")),
                                  (v("011"), v("111")))
    assert w is not None and w.length == 3


def test_repeated_edge_rejected():
    d = all_pairs_distances(graphs.path_graph(4))
    with pytest.raises(PreconditionError):
        triple_on_common_geodesic(d, (0, 1), (1, 0), (2, 3))


def named_small():
    return [graphs.path_graph(6), graphs.cycle_graph(8), graphs.hypercube(3), graphs.fibonacci_cube(4),
            graphs.lucas_cube(5), graphs.grid(3), graphs.paper_fig3_graph(), graphs.complete_bipartite(2, 3),
            graphs.complete_bipartite(3, 4)]


@pytest.mark.parametrize("g", named_small(), ids=lambda g: g.name)
def test_triple_test_matches_both_oracles(g):
    d = all_pairs_distances(g)
    truth = nx_conflicts(g)
    assert truth == conflicting_triples(g)
    assert {tuple(t) for t in conflict_triples(g, d).tolist()} == truth
    for t in combinations(range(g.size), 3):
        edges = [g.edges[i] for i in t]
        w = triple_on_common_geodesic(d, *edges)
        assert (w is not None) == (t in truth)
        if w is not None:
            check_witness(g, d, edges, w)


@given(st.integers(0, 2**32))
def test_triple_test_random_graphs(seed):
    g = graphs.random_connected_bipartite(random.Random(seed), max_order=10)
    d = all_pairs_distances(g)
    assert {tuple(t) for t in conflict_triples(g, d, chunk=7).tolist()} == conflicting_triples(g)


def test_oracle_geodesics_match_networkx():
    g = graphs.fibonacci_cube(5)
    h = to_nx(g)
    ours = set(all_geodesics(g))
    theirs = {tuple(p) for s, t in combinations(range(g.order), 2) for p in nx.all_shortest_paths(h, s, t)}
    assert ours == theirs


def test_gp_examples():
    g5 = graphs.fibonacci_cube(5)
    d = all_pairs_distances(g5)
    part = theta_partition(g5, d)
    assert is_edge_gp_set(g5, d, part.union(1, 5))
    q3 = graphs.hypercube(3)
    dq = all_pairs_distances(q3)
    verdict = is_edge_gp_set(q3, dq, EdgeSet.full(12))
    assert not verdict
    assert verdict.violating_triple == min(conflicting_triples(q3))
    check_witness(q3, dq, [q3.edges[i] for i in verdict.violating_triple], verdict.witness)
    assert verdict.witness.length == 3
    for pair in combinations(range(12), 2):
        assert is_edge_gp_set(q3, dq, EdgeSet.from_indices(12, pair))


def test_extension_examples():
    for g in (graphs.fibonacci_cube(5), graphs.lucas_cube(5)):
        d = all_pairs_distances(g)
        part = theta_partition(g, d)
        x = part.union(1, 5)
        for i in (2, 3, 4):
            assert not any(can_extend(g, d, x, e) for e in part.theta(i))
        assert is_maximal_edge_gp_set(g, d, x)
        assert all(can_extend(g, d, EdgeSet.empty(g.size), e) for e in range(g.size))
        with pytest.raises(PreconditionError):
            can_extend(g, d, x, next(iter(x)))
    lam = graphs.lucas_cube(5)
    assert len(theta_partition(lam).union(1, 5)) == 6


@pytest.mark.parametrize("family, lo", [("fibonacci", 2), ("lucas", 4)])
def test_first_last_union_maximal(family, lo):
    for n in range(lo, 9):
        g = graphs.family_graph(family, n)
        d = all_pairs_distances(g)
        x = theta_partition(g, d).union(1, n)
        assert is_maximal_edge_gp_set(g, d, x)
        assert extendable_edges(g, d, x) == []


def test_every_class_pair_maximal_small_fibonacci_cubes():
    # open question: maximality of every two-class union, checked for n <= 7
    for n in range(2, 8):
        g = graphs.fibonacci_cube(n)
        d = all_pairs_distances(g)
        part = theta_partition(g, d)
        for i, j in combinations(range(1, n + 1), 2):
            assert is_maximal_edge_gp_set(g, d, part.union(i, j)), (n, i, j)


def test_class_pair_examples():
    q4 = graphs.hypercube(4)
    dq = all_pairs_distances(q4)
    assert class_pair_is_gp(q4, dq, theta_partition(q4, dq), 1, 2)
    g = graphs.grid(5)
    d = all_pairs_distances(g)
    assert class_pair_is_gp(g, d, theta_partition(g, d), 1, 7)
    g6 = graphs.fibonacci_cube(6)
    d6 = all_pairs_distances(g6)
    assert failing_class_pairs(g6, d6, theta_partition(g6, d6)) == []
    k = graphs.complete_bipartite(2, 3)
    dk = all_pairs_distances(k)
    with pytest.raises(NotPartialCubeError):
        class_pair_is_gp(k, dk, theta_partition(k, dk), 1, 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_geodesic_meets_each_class_once(n):
    for g in (graphs.fibonacci_cube(n), graphs.lucas_cube(n)):
        part = theta_partition(g)
        for path in all_geodesics(g):
            classes = [part.class_of[g.edge_index(a, b)] for a, b in zip(path, path[1:])]
            assert len(classes) == len(set(classes))


@given(st.integers(0, 2**32))
def test_downward_closed_and_matches_oracle(seed):
    rng = random.Random(seed)
    g = graphs.random_connected_bipartite(rng, max_order=9)
    d = all_pairs_distances(g)
    x = EdgeSet.from_indices(g.size, [e for e in range(g.size) if rng.random() < 0.5])
    verdict = is_edge_gp_set(g, d, x)
    assert bool(verdict) == is_gp_by_geodesics(g, x)
    if verdict:
        for _ in range(5):
            y = EdgeSet.from_indices(g.size, [e for e in x if rng.random() < 0.5])
            assert is_edge_gp_set(g, d, y)
    else:
        t = verdict.violating_triple
        assert triple_on_common_geodesic(d, *(g.edges[i] for i in t)) is not None

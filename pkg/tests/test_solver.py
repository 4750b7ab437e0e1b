import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from conftest import to_nx
from gpcube import graphs
from gpcube.cover import fig3_cover, greedy_geodesic_cover, is_geodesic, make_cover, maximal_geodesics
from gpcube.edgeset import EdgeSet
from gpcube.errors import PreconditionError, SolverLimitError
from gpcube.gp_core import is_edge_gp_set
from gpcube.metric import all_pairs_distances
from gpcube.oracles import all_geodesics, gp_e_by_subsets
from gpcube.sequences import fibonacci
from gpcube.solver import conjecture_sweep, enumerate_maximum_sets, solve_gp_e
from gpcube.symmetry import apply_to_edge_set, automorphisms, edge_permutation, is_automorphism, orbit_count
from gpcube.theta import best_class_pair, theta_partition


@pytest.mark.parametrize("g, value", [
    (graphs.path_graph(3), 2), (graphs.cycle_graph(4), 4),
    (graphs.fibonacci_cube(5), 10), (graphs.lucas_cube(5), 7), (graphs.hypercube(3), 8),
    (graphs.grid(4), 8), (graphs.grid(5), 12), (graphs.paper_fig3_graph(), 8),
    (graphs.hypercube(4), 16), (graphs.fibonacci_cube(6), 16),
], ids=lambda x: getattr(x, "name", str(x)))
def test_known_values(g, value):
    res = solve_gp_e(g)
    assert res.optimum == value
    assert len(res.witnesses) == 1 and len(res.witnesses[0]) == value
    assert is_edge_gp_set(g, all_pairs_distances(g), res.witnesses[0])


@pytest.mark.parametrize("mode", ["cover", "counting", "none"])
def test_bound_modes_agree(mode):
    for g in (graphs.lucas_cube(5), graphs.paper_fig3_graph(), graphs.grid(4)):
        ref = solve_gp_e(g)
        res = solve_gp_e(g, bound_mode=mode)
        assert res.optimum == ref.optimum and res.witnesses == ref.witnesses


def test_unseeded_search_agrees():
    for g in (graphs.fibonacci_cube(5), graphs.hypercube(3)):
        a = solve_gp_e(g)
        b = solve_gp_e(g, seed_with_theta_pair=False)
        assert a.optimum == b.optimum and a.witnesses == b.witnesses


def test_thread_count_does_not_change_answer():
    for g in (graphs.lucas_cube(6), graphs.grid(5), graphs.fibonacci_cube(6)):
        one = solve_gp_e(g, thread_count=1)
        four = solve_gp_e(g, thread_count=4)
        assert one.optimum == four.optimum
        assert one.witnesses[0] == four.witnesses[0]


def test_limits_and_options():
    with pytest.raises(SolverLimitError):
        solve_gp_e(graphs.hypercube(6))
    with pytest.raises(PreconditionError):
        solve_gp_e(graphs.path_graph(3), bound_mode="magic")
    with pytest.raises(PreconditionError):
        solve_gp_e(graphs.path_graph(3), thread_count=0)
    assert solve_gp_e(graphs.path_graph(2)).optimum == 1


@given(st.integers(0, 2**32))
def test_solver_matches_subset_oracle(seed):
    g = graphs.random_connected_bipartite(random.Random(seed), max_order=10)
    if g.size > 16:
        return
    assert solve_gp_e(g).optimum == gp_e_by_subsets(g)


@given(st.integers(0, 2**32))
def test_solver_on_non_bipartite_graphs(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    h = nx.gnp_random_graph(n, rng.uniform(0.3, 0.8), seed=seed)
    if not nx.is_connected(h):
        return
    g = graphs.Graph(n, h.edges())
    if g.size > 16:
        return
    assert solve_gp_e(g).optimum == gp_e_by_subsets(g)


def test_lower_bound_sanity():
    for n in range(2, 7):
        assert solve_gp_e(graphs.fibonacci_cube(n)).optimum >= 2 * fibonacci(n)
        lam = graphs.lucas_cube(n)
        assert solve_gp_e(lam).optimum >= 2 * fibonacci(n - 1)
    for g in (graphs.grid(5), graphs.paper_fig3_graph(), graphs.hypercube(4)):
        assert solve_gp_e(g).optimum >= best_class_pair(theta_partition(g))[2]


def test_enumeration_examples():
    p3 = enumerate_maximum_sets(graphs.path_graph(3))
    assert p3 == [EdgeSet.full(2)]
    assert enumerate_maximum_sets(graphs.cycle_graph(4)) == [EdgeSet.full(4)]
    lam = graphs.lucas_cube(5)
    sets = enumerate_maximum_sets(lam)
    assert all(len(x) == 7 for x in sets)
    assert sets == sorted(sets, key=EdgeSet.sort_key)
    assert orbit_count(lam, sets, automorphisms(lam)) == 1


def test_enumeration_matches_brute_force():
    for g in (graphs.paper_fig3_graph(), graphs.hypercube(3), graphs.lucas_cube(5)):
        d = all_pairs_distances(g)
        best = solve_gp_e(g, d).optimum
        brute = [EdgeSet.from_indices(g.size, c) for c in combinations(range(g.size), best)
                 if is_edge_gp_set(g, d, EdgeSet.from_indices(g.size, c))]
        assert enumerate_maximum_sets(g, d) == sorted(brute, key=EdgeSet.sort_key)


def test_first_witness_is_deterministic():
    g = graphs.grid(5)
    assert solve_gp_e(g).witnesses == solve_gp_e(g).witnesses


def test_greedy_cover_examples():
    p5 = graphs.path_graph(5)
    cover = greedy_geodesic_cover(p5, all_pairs_distances(p5))
    assert len(cover.paths) == 1 and cover.bound == 2
    q2 = graphs.hypercube(2)
    cover = greedy_geodesic_cover(q2, all_pairs_distances(q2))
    assert len(cover.paths) == 2 and cover.bound == 4
    fig = graphs.paper_fig3_graph()
    d = all_pairs_distances(fig)
    assert len(greedy_geodesic_cover(fig, d).paths) <= 4
    assert fig3_cover(fig, d).bound == 8 and fig3_cover(fig, d).uncovered == 0


@pytest.mark.parametrize("g", [graphs.fibonacci_cube(5), graphs.grid(5), graphs.lucas_cube(6),
                               graphs.paper_fig3_graph(), graphs.hypercube(3)], ids=lambda g: g.name)
def test_cover_bound_valid(g):
    d = all_pairs_distances(g)
    cover = greedy_geodesic_cover(g, d)
    assert cover.uncovered == 0
    assert all(is_geodesic(g, d, p) for p in cover.paths)
    assert solve_gp_e(g, d).optimum <= cover.bound


def test_make_cover_rejects_non_geodesic():
    c6 = graphs.cycle_graph(6)
    with pytest.raises(PreconditionError):
        make_cover(c6, all_pairs_distances(c6), [(0, 1, 2, 3, 4)])


def test_maximal_geodesics_contain_every_geodesic():
    g = graphs.lucas_cube(5)
    d = all_pairs_distances(g)
    maximal = [set(p) for p in maximal_geodesics(g, d)]
    for path in all_geodesics(g):
        edges = {g.edge_index(a, b) for a, b in zip(path, path[1:])}
        assert any(edges <= m for m in maximal)


def count_automorphisms_nx(g):
    h = to_nx(g)
    return sum(1 for _ in GraphMatcher(h, h).isomorphisms_iter())


@pytest.mark.parametrize("g, count", [
    (graphs.cycle_graph(4), 8), (graphs.hypercube(3), 48), (graphs.lucas_cube(5), 10),
    (graphs.fibonacci_cube(5), 2), (graphs.paper_fig3_graph(), 8), (graphs.hypercube(4), 384),
], ids=lambda x: getattr(x, "name", str(x)))
def test_automorphism_counts(g, count):
    autos = automorphisms(g)
    assert len(autos) == count == count_automorphisms_nx(g)
    assert all(is_automorphism(g, p) for p in autos)


def test_group_axioms():
    g = graphs.lucas_cube(5)
    autos = automorphisms(g)
    group = set(autos)
    assert tuple(range(g.order)) in group
    for p in autos:
        inverse = [0] * g.order
        for v, w in enumerate(p):
            inverse[w] = v
        assert tuple(inverse) in group
        for q in autos:
            assert tuple(p[q[v]] for v in range(g.order)) in group


def test_automorphism_size_limit():
    with pytest.raises(PreconditionError):
        automorphisms(graphs.hypercube(5))


def test_orbit_count_examples():
    c4 = graphs.cycle_graph(4)  # edges (0,1) (0,3) (1,2) (2,3)
    autos = automorphisms(c4)
    a = EdgeSet.from_indices(4, [0])
    b = EdgeSet.from_indices(4, [3])
    assert orbit_count(c4, [a], autos) == 1
    assert orbit_count(c4, [a, b], autos) == 1
    assert orbit_count(c4, [a, b], [tuple(range(4))]) == 2
    swap = next(p for p in autos if apply_to_edge_set(edge_permutation(c4, p), a) == b)
    assert is_automorphism(c4, swap)


def test_orbit_count_against_direct_orbits():
    g = graphs.grid(4)
    sets = enumerate_maximum_sets(g)
    autos = automorphisms(g)
    perms = [edge_permutation(g, p) for p in autos]
    remaining = set(sets)
    orbits = 0
    while remaining:
        x = remaining.pop()
        remaining -= {apply_to_edge_set(ep, x) for ep in perms}
        orbits += 1
    assert orbit_count(g, sets, autos) == orbits


def test_conjecture_sweep():
    rows = conjecture_sweep(6)
    assert [r.n for r in rows] == [2, 3, 4, 5, 6]
    assert [r.gp_e for r in rows] == [2, 4, 6, 10, 16]
    assert all(r.status == "EQUAL" for r in rows)
    assert all(len(r.witness) == r.gp_e for r in rows)


def test_conjecture_sweep_seven():
    (row,) = conjecture_sweep(7, n_min=7)
    assert row.status == "EQUAL" and row.gp_e == 26

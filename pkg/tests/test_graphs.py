import io
import random
from itertools import product

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import to_nx
from gpcube import graphs
from gpcube.errors import DisconnectedGraphError, GraphFormatError, PreconditionError
from gpcube.graphs import Graph
from gpcube.sequences import fibonacci, lucas


def brute_strings(n, keep):
    return sorted("".join(p) for p in product("01", repeat=n) if keep("".join(p)))


def test_graph_canonicalises_edges():
    g = Graph(3, [(2, 1), (0, 1)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.edge_index(2, 1) == 1
    assert g.adj == ((1,), (0, 2), (1,))


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(0, 1), (1, 0)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(PreconditionError):
        Graph(3, edges, allow_disconnected=True)


def test_disconnected_needs_opt_in():
    with pytest.raises(DisconnectedGraphError):
        Graph(3, [(0, 1)])
    g = Graph(3, [(0, 1)], allow_disconnected=True)
    assert g.unreachable_pair() == (0, 2)


def test_labels_must_follow_edges():
    with pytest.raises(PreconditionError):
        Graph(2, [(0, 1)], labels=["00", "11"])
    with pytest.raises(PreconditionError):
        Graph(2, [(0, 1)], labels=["0", "10"])


@pytest.mark.parametrize("r, order, size", [(1, 2, 1), (3, 8, 12), (4, 16, 32)])
def test_hypercube_sizes(r, order, size):
    g = graphs.hypercube(r)
    assert (g.order, g.size) == (order, size)


def test_fibonacci_cube_examples():
    g5 = graphs.fibonacci_cube(5)
    assert (g5.order, g5.size) == (13, 20)
    assert graphs.fibonacci_cube(1).order == 2


def test_lucas_cube_examples():
    g = graphs.lucas_cube(5)
    assert (g.order, g.size) == (11, 15)
    gamma = set(graphs.fibonacci_cube(5).labels)
    assert gamma - set(g.labels) == {"10001", "10101"}
    assert sorted(graphs.lucas_cube(3).labels) == ["000", "001", "010", "100"]


def test_lucas_one_is_a_single_vertex():
    g = graphs.lucas_cube(1)
    assert (g.order, g.size, g.labels) == (1, 0, ("0",))


def test_orders_follow_sequences():
    for n in range(1, 21):
        assert graphs.fibonacci_cube(n).order == fibonacci(n + 2)
    for n in range(2, 21):
        assert graphs.lucas_cube(n).order == lucas(n)


def test_strings_match_brute_force():
    for n in range(1, 13):
        assert sorted(graphs.fibonacci_strings(n)) == brute_strings(n, graphs.is_fibonacci_string)
        lucas_set = brute_strings(n, lambda s: "11" not in s and not (s[0] == s[-1] == "1" and n > 1))
        assert sorted(graphs.lucas_cube(n).labels) == lucas_set or n == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_edges_are_hamming_one(n):
    for g in (graphs.fibonacci_cube(n), graphs.lucas_cube(n)):
        want = {
            (i, j) for i in range(g.order) for j in range(i + 1, g.order)
            if graphs.hamming(g.labels[i], g.labels[j]) == 1
        }
        assert set(g.edges) == want


def test_path_graph():
    assert graphs.path_graph(1).size == 0
    assert graphs.path_graph(2).size == 1
    g = graphs.path_graph(4)
    assert (g.order, g.size) == (4, 3)
    assert g.labels == ("000", "100", "110", "111")


def test_products():
    c4 = graphs.cartesian_product(graphs.path_graph(2), graphs.path_graph(2))
    assert nx.is_isomorphic(to_nx(c4), nx.cycle_graph(4))
    q3 = graphs.cartesian_product(graphs.hypercube(2), graphs.path_graph(2))
    assert nx.is_isomorphic(to_nx(q3), nx.hypercube_graph(3))
    g = graphs.cartesian_product(graphs.path_graph(4), graphs.path_graph(4))
    assert (g.order, g.size) == (16, 24)


@pytest.mark.parametrize("r, order, size", [(4, 16, 24), (5, 25, 40)])
def test_grid_sizes(r, order, size):
    g = graphs.grid(r)
    assert (g.order, g.size) == (order, size)
    assert nx.is_isomorphic(to_nx(g), nx.grid_2d_graph(r, r))


def test_grid_two_is_c4_and_one_rejected():
    assert nx.is_isomorphic(to_nx(graphs.grid(2)), nx.cycle_graph(4))
    with pytest.raises(PreconditionError):
        graphs.grid(1)


@pytest.mark.parametrize("gen", [graphs.hypercube, graphs.fibonacci_cube, graphs.lucas_cube])
def test_zero_rejected(gen):
    with pytest.raises(PreconditionError):
        gen(0)


def test_fig3_graph():
    g = graphs.paper_fig3_graph()
    assert (g.order, g.size) == (12, 16)
    assert nx.is_bipartite(to_nx(g))


def test_family_graph_dispatch():
    assert graphs.family_graph("fig3").order == 12
    assert graphs.family_graph("lucas", 5).order == 11
    with pytest.raises(PreconditionError):
        graphs.family_graph("petersen", 3)
    with pytest.raises(PreconditionError):
        graphs.family_graph("grid")


def test_save_load_roundtrip():
    g = graphs.fibonacci_cube(4)
    buf = io.StringIO()
    graphs.save_graph(g, buf)
    buf.seek(0)
    h = graphs.load_graph(buf)
    assert h == g and h.labels == g.labels
    assert graphs.loads_graph(graphs.dumps_graph(graphs.paper_fig3_graph())) == graphs.paper_fig3_graph()


@pytest.mark.parametrize("text, fragment", [
    ("p 2 1\ne 1 1\n", "line 2: loop"),
    ("p 2 1\nl 0 0\nl 1 10\ne 0 1\n", "line 3"),
    ("p 2 2\ne 0 1\ne 1 0\n", "line 3: duplicate"),
    ("e 0 1\n", "line 1: missing"),
    ("p 2 1\nx 0 1\n", "unknown line type"),
    ("p 2 1\ne 0 a\n", "expected integers"),
    ("p 2 1\ne 0 5\n", "outside"),
    ("p 2 2\ne 0 1\n", "declares 2 edges"),
    ("p 3 2\nl 0 00\ne 0 1\ne 1 2\n", "label all or none"),
    ("", "empty"),
    ("p 2 1\nl 0 00\nl 1 11\ne 0 1\n", "exactly one bit"),
])
def test_load_errors(text, fragment):
    with pytest.raises(GraphFormatError) as info:
        graphs.loads_graph(text)
    assert fragment in str(info.value)


def test_load_disconnected():
    text = "p 3 1\ne 0 1\n"
    with pytest.raises(DisconnectedGraphError):
        graphs.loads_graph(text)
    assert graphs.loads_graph(text, allow_disconnected=True).order == 3


def test_comments_ignored():
    g = graphs.loads_graph("# a path\np 2 1\ne 0 1  # the edge\n")
    assert g.edges == ((0, 1),)


@given(st.integers(0, 2**32))
def test_random_bipartite_is_connected_bipartite(seed):
    g = graphs.random_connected_bipartite(random.Random(seed))
    h = to_nx(g)
    assert g.order <= 12 and nx.is_connected(h) and nx.is_bipartite(h)


@given(st.integers(0, 2**32), st.integers(1, 8))
def test_cube_cactus_structure(seed, blocks):
    g = graphs.random_cube_cactus(random.Random(seed), blocks)
    h = to_nx(g)
    assert nx.is_connected(h)
    assert len(list(nx.biconnected_components(h))) == blocks

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from repath import graph as gr
from repath.generators import erdos_renyi, layered_dag
from repath.graph import INF, Graph, GraphError, PathSpec

from conftest import SAMPLE_R, SAMPLE_S, to_nx


def path_graph():
    return Graph.from_edges(3, [(0, 1, 1), (1, 2, 2)])


def test_sssp_path_graph():
    assert list(gr.sssp(path_graph(), 0).dist) == [0, 1, 3]
    assert list(gr.sssp_to(path_graph(), 2).dist) == [3, 2, 0]


def test_disconnected_node():
    G = Graph.from_edges(3, [(0, 1, 4)])
    T = gr.sssp(G, 0)
    assert T.dist[2] == INF and T.parent_edge[2] == -1
    with pytest.raises(GraphError):
        gr.tree_path(T, 2)


def test_dag_sink_distance():
    G = Graph.from_edges(2, [(0, 1, -7)], kind="dag")
    T = gr.sssp_to(G, 1)
    assert list(T.dist) == [-7, 0]
    assert gr.tree_path(T, 0) == [0]


def test_dag_rejects_cycle():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)], kind="dag")


def test_self_loop_rejected():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(1, 1, 1)])


def test_negative_undirected_rejected_by_sssp():
    G = Graph.from_edges(2, [(0, 1, -1)])
    with pytest.raises(GraphError):
        gr.sssp(G, 0)


def test_weight_budget():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1, 1 << 62)])


def test_tree_path_depths():
    T = gr.sssp(path_graph(), 0)
    assert gr.tree_path(T, 0) == []
    assert gr.tree_path(T, 1) == [0]
    assert gr.tree_path(T, 2) == [0, 1]


def test_force_path_prefers_given_edges():
    # two equally short r-s routes; the forced one must end up in the tree
    G = Graph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)])
    P = PathSpec.from_nodes(G, [0, 2, 3])
    T = gr.sssp(G, 0, force_path=P)
    assert gr.tree_path(T, 3) == [2, 3]


def test_force_path_must_be_shortest():
    G = Graph.from_edges(3, [(0, 1, 5), (1, 2, 5), (0, 2, 1)])
    with pytest.raises(GraphError):
        gr.sssp(G, 0, force_path=PathSpec.from_nodes(G, [0, 1, 2]))


def test_parallel_edges_resolve_to_lightest():
    G = Graph.from_edges(2, [(0, 1, 5), (1, 0, 2), (0, 1, 2)])
    assert list(PathSpec.from_nodes(G, [0, 1]).edges) == [1]


def test_sample_levels(detours):
    P = PathSpec.from_nodes(detours, range(SAMPLE_S + 1))
    T = gr.sssp(detours, SAMPLE_R, force_path=P)
    lam = gr.levels(T, P)
    assert list(lam) == [0, 1, 2, 3, 4, 5, 1, 2, 3, 3]
    assert list(T.dist) == [0, 1, 3, 4, 7, 8, 4, 6, 6, 6]
    assert list(gr.sssp_to(detours, SAMPLE_S).dist) == [8, 7, 5, 4, 1, 0, 8, 8, 6, 3]


def test_levels_require_path_in_tree():
    G = Graph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)])
    T = gr.sssp(G, 0)
    other = PathSpec.from_nodes(G, [0, 2, 3] if gr.tree_path(T, 3) == [0, 1] else [0, 1, 3])
    with pytest.raises(GraphError):
        gr.levels(T, other)


def _random_graph(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 50))
    m = int(rng.integers(0, 4 * n))
    if seed % 2:
        return layered_dag(n, max(m, n - 1), rng)
    return erdos_renyi(n, m, rng, 0, 20, connected=bool(rng.integers(0, 2)))


@pytest.mark.parametrize("seed", range(100))
def test_sssp_matches_bellman_ford(seed):
    G = _random_graph(seed)
    T = gr.sssp(G, 0)
    ref = nx.single_source_bellman_ford_path_length(to_nx(G), 0)
    assert [ref.get(v, INF) for v in range(G.n)] == [int(d) for d in T.dist]
    assert gr.relaxation_ok(G, T)
    for x in range(G.n):
        if T.dist[x] != INF:
            end, w = gr.walk_weight(G, 0, gr.tree_path(T, x))
            assert (end, w) == (x, T.dist[x])


@pytest.mark.parametrize("seed", range(40))
def test_sssp_to_matches_per_node(seed):
    G = _random_graph(seed)
    s = G.n - 1
    T = gr.sssp_to(G, s)
    assert gr.relaxation_ok(G, T)
    for v in range(G.n):
        assert gr.sssp(G, v).dist[s] == T.dist[v]
    if not G.directed:
        assert np.array_equal(T.dist, gr.sssp(G, s).dist)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_levels_monotone_along_tree(seed):
    G = _random_graph(seed)
    T = gr.sssp(G, 0)
    if T.dist[G.n - 1] == INF or G.n < 2:
        return
    edges = gr.tree_path(T, G.n - 1)
    nodes = [0]
    for e in edges:
        nodes.append(G.other_end(e, nodes[-1]))
    lam = gr.levels(T, PathSpec(np.array(nodes), np.array(edges, dtype=np.int64)))
    for x in range(G.n):
        if T.parent[x] >= 0:
            assert lam[x] >= lam[T.parent[x]]


# -- text format ----------------------------------------------------------------------

def test_roundtrip(detours):
    assert gr.dumps(gr.loads(gr.dumps(detours))) == gr.dumps(detours)


@pytest.mark.parametrize("text,line", [
    ("", 1), ("3 1 X\n1 2 3\n", 1), ("3 2 U\n1 2 3\n", 2), ("3 1 U\n1 4 3\n", 2),
    ("3 1 U\n1 1 3\n", 2), ("3 1 U\n1 2 x\n", 2), ("3 2 D\n1 2 1\n2 1 1\n", 1),
])
def test_format_errors(text, line):
    with pytest.raises(gr.GraphFormatError) as exc:
        gr.loads(text)
    assert f"line {line}" in str(exc.value)

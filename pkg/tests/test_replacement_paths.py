import numpy as np
import pytest

from repath import graph as gr
from repath.generators import erdos_renyi, layered_dag
from repath.graph import Graph, GraphError, PathSpec
from repath.replacement_paths import (
    EDGE, NODE, check_report_paths, context_for, oracle_replacement, solve_edge_avoiding,
    solve_node_avoiding,
)

from conftest import SAMPLE_R, SAMPLE_S, nx_replacement


def test_sample_edge_avoiding(detours):
    rep = solve_edge_avoiding(detours, SAMPLE_R, SAMPLE_S, paths=True)
    assert rep.distances == [13, 12, 12, 9, 9]
    assert check_report_paths(detours, rep) == []


def test_sample_node_avoiding(detours):
    rep = solve_node_avoiding(detours, SAMPLE_R, SAMPLE_S, paths=True)
    assert rep.distances == [13, 12, 12, 9]
    assert [e.element for e in rep.entries] == [1, 2, 3, 4]
    assert check_report_paths(detours, rep) == []


@pytest.mark.parametrize("mode,expected", [(EDGE, [13, 12, 12, 9, 9]), (NODE, [13, 12, 12, 9])])
def test_sample_oracle(detours, mode, expected):
    assert oracle_replacement(detours, SAMPLE_R, SAMPLE_S, mode=mode).distances == expected


def test_single_edge_disconnects():
    G = Graph.from_edges(2, [(0, 1, 4)])
    rep = solve_edge_avoiding(G, 0, 1, paths=True)
    assert rep.distances == [float("inf")] and rep.entries[0].path is None


def test_star_with_shortcut():
    G = Graph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)])
    assert solve_node_avoiding(G, 0, 2).distances == [5]


def test_node_mode_on_one_edge_path_is_empty():
    G = Graph.from_edges(2, [(0, 1, 1)])
    assert solve_node_avoiding(G, 0, 1).entries == []


def test_given_path_is_validated():
    G = Graph.from_edges(3, [(0, 1, 5), (1, 2, 5), (0, 2, 1)])
    with pytest.raises(GraphError):
        solve_edge_avoiding(G, 0, 2, P=[0, 1, 2])
    with pytest.raises(GraphError):
        solve_edge_avoiding(G, 0, 2, P=[0, 1])


def test_unreachable_sink():
    G = Graph.from_edges(3, [(0, 1, 1)])
    with pytest.raises(GraphError):
        solve_edge_avoiding(G, 0, 2)


def test_negative_undirected_redirects():
    G = Graph.from_edges(2, [(0, 1, -1)])
    with pytest.raises(GraphError, match="classify_negative_edges"):
        solve_edge_avoiding(G, 0, 1)


def test_dag_negative_off_path():
    G = Graph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 5), (2, 3, -2)], kind="dag")
    P = PathSpec.from_nodes(G, [0, 1, 3])
    ref = oracle_replacement(G, 0, 3, P, EDGE).distances
    assert ref == [3, 3]
    assert solve_edge_avoiding(G, 0, 3, P).distances == ref


def test_oracle_is_deterministic(detours):
    a = oracle_replacement(detours, SAMPLE_R, SAMPLE_S, mode=NODE, paths=True)
    b = oracle_replacement(detours, SAMPLE_R, SAMPLE_S, mode=NODE, paths=True)
    assert [(e.distance, e.path) for e in a.entries] == [(e.distance, e.path) for e in b.entries]


def _instance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 80))
    m = int(rng.integers(n - 1, min(400, 5 * n) + 1))
    if seed % 2:
        G = layered_dag(n, m, rng)
    else:
        # zero weights included: ties exercise the tree tie-breaking
        G = erdos_renyi(n, m, rng, 0, int(rng.choice([1, 5, 100])))
    r, s = int(rng.integers(0, n)), int(rng.integers(0, n))
    return G, r, s


@pytest.mark.parametrize("seed", range(300))
def test_pipeline_matches_networkx(seed):
    G, r, s = _instance(seed)
    try:
        ctx = context_for(G, r, s)
    except GraphError:
        return
    for mode, solve in ((EDGE, solve_edge_avoiding), (NODE, solve_node_avoiding)):
        rep = solve(G, r, s, paths=True, ctx=ctx)
        assert rep.distances == nx_replacement(G, ctx.P, mode)
        assert check_report_paths(G, rep) == []
        for e in rep.entries:
            if e.path is not None:
                end, w = gr.walk_weight(G, r, e.path)
                assert (end, w) == (s, e.distance)

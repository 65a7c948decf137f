import networkx as nx
import numpy as np
import pytest

from repath import graph as gr
from repath import reductions as rd
from repath.generators import erdos_renyi, layered_dag
from repath.graph import INF, Graph, PathSpec
from repath.replacement_paths import context_for, hub_tree, solve_edge_avoiding
from repath.rowmin import naive_row_minima

from conftest import SAMPLE_R, SAMPLE_S, NEG_WALK, as_int_list, nx_replacement

# edge ids of the sample graph file
V0V6, V6V7, V6V5, V7V4, V0V8, V9V5 = 5, 7, 9, 10, 11, 15


@pytest.fixture(scope="module")
def sample_ctx(detours):
    return context_for(detours, SAMPLE_R, SAMPLE_S)


def test_sample_path_is_v0_to_v5(sample_ctx):
    assert list(sample_ctx.P.nodes) == [0, 1, 2, 3, 4, 5]


def test_edge_matrix_golden(sample_ctx):
    M = rd.edge_replacement_matrix(sample_ctx)
    live = {j: M.columns[j] for j in range(M.m) if M.c[j] != INF}
    assert live == {
        V0V6: (1, 1, 13), V0V8: (1, 3, 15), V6V7: (2, 2, 18),
        V6V5: (2, 5, 12), V7V4: (3, 4, 16), V9V5: (4, 5, 9),
    }
    assert as_int_list(naive_row_minima(M).values) == [13, 12, 12, 9, 9]


def test_hub_graph_golden(sample_ctx):
    aux, T0 = hub_tree(sample_ctx)
    assert aux.graph.n == 10 + 5
    assert [int(aux.hub_weight[x]) for x in (6, 7, 8)] == [5, 10, 9]
    assert aux.hub_weight[9] == INF          # r_3 -> v9 omitted
    hubs = {(int(a), int(b)): int(w) for a, b, w, _ in aux.graph.edges if a > 10}
    assert hubs == {(11, 6): 5, (12, 7): 10, (13, 8): 9}
    assert as_int_list(T0.dist[6:10]) == [5, 10, 9, 16]


def test_node_matrix_golden(sample_ctx):
    _, T0 = hub_tree(sample_ctx)
    N = rd.node_replacement_matrix(sample_ctx, T0)
    assert N.n_rows == 4
    live = {}
    for j, col in enumerate(N.columns):
        col = [iv for iv in col if iv[2] != INF]
        if col:
            live[j] = col
    assert live == {
        V0V8: [(1, 2, 15)], V6V7: [(1, 1, 19)], V6V5: [(1, 1, 13), (2, 4, 12)],
        V7V4: [(2, 2, 20), (3, 3, 16)], V9V5: [(3, 3, 19), (4, 4, 9)],
    }
    assert as_int_list(naive_row_minima(N).values) == [13, 12, 12, 9]


def test_path_edge_column_is_dummy(sample_ctx):
    M = rd.edge_replacement_matrix(sample_ctx)
    assert all(M.c[e] == INF for e in sample_ctx.P.edges)


def test_same_level_edge_is_dummy():
    # triangle hanging off the path: a-b share level 1
    G = Graph.from_edges(5, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1), (3, 4, 1)])
    ctx = context_for(G, 0, 2)
    assert rd.edge_replacement_matrix(ctx).c[4] == INF


def test_empty_level_leaves_hub_isolated(sample_ctx):
    aux, _ = hub_tree(sample_ctx)
    r4 = aux.hub(4)
    touching = [e for a, b, w, e in aux.graph.edges if r4 in (a, b)]
    assert len(touching) == 1 and aux.graph.u[touching[0]] == aux.root


def _instances(count, seed0, kinds=("U", "D"), n_max=60):
    out = []
    rng = np.random.default_rng(seed0)
    while len(out) < count:
        n = int(rng.integers(3, n_max))
        kind = kinds[len(out) % len(kinds)]
        if kind == "U":
            G = erdos_renyi(n, int(rng.integers(n - 1, 3 * n)), rng, 0, 30)
        else:
            G = layered_dag(n, int(rng.integers(n - 1, 3 * n)), rng)
        try:
            ctx = context_for(G, 0, n - 1)
        except gr.GraphError:
            continue
        out.append((G, ctx))
    return out


@pytest.mark.parametrize("G,ctx", _instances(200, 11))
def test_edge_rows_equal_deletion(G, ctx):
    got = naive_row_minima(rd.edge_replacement_matrix(ctx)).values
    ref = nx_replacement(G, ctx.P, "edge_avoiding")
    assert [float("inf") if v == INF else int(v) for v in got] == ref


@pytest.mark.parametrize("G,ctx", _instances(200, 12))
def test_node_rows_equal_deletion(G, ctx):
    if ctx.p < 2:
        return
    _, T0 = hub_tree(ctx)
    N = rd.node_replacement_matrix(ctx, T0)
    assert N.k <= 2
    got = naive_row_minima(N).values
    ref = nx_replacement(G, ctx.P, "node_avoiding")
    assert [float("inf") if v == INF else int(v) for v in got] == ref


def check_hub_distances(G, ctx):
    aux, T0 = hub_tree(ctx)
    lam = ctx.lam
    for i in range(1, ctx.p):
        region = set(np.flatnonzero((lam >= 0) & (lam < i)))
        level = {x for x in np.flatnonzero(lam == i) if x != ctx.P.nodes[i]}
        H = nx.MultiDiGraph() if G.directed else nx.MultiGraph()
        H.add_nodes_from(region | level)
        for a, b, w, _ in G.edges:
            if a in H and b in H:
                H.add_edge(a, b, weight=w)
        ref = nx.single_source_bellman_ford_path_length(H, ctx.P.source)
        for x in level:
            assert T0.dist[x] == ref.get(x, INF), (i, x)


@pytest.mark.parametrize("G,ctx", _instances(100, 13))
def test_hub_distances_match_induced_subgraph(G, ctx):
    check_hub_distances(G, ctx)


@pytest.mark.parametrize("G,ctx", _instances(60, 14, kinds=("U",)))
def test_subdivision_reduction(G, ctx):
    G2, P2 = rd.subdivide_for_node_reduction(G, ctx.P)
    assert (G2.n, G2.m) == (G.n + ctx.p, G.m + ctx.p)
    node_ans = nx_replacement(G2, P2, "node_avoiding")[0::2]
    edge_ans = solve_edge_avoiding(G, ctx.P.source, ctx.P.sink, ctx.P).distances
    assert edge_ans == [d if d == float("inf") else d // 2 for d in node_ans]


def test_subdivision_single_edge():
    G = Graph.from_edges(2, [(0, 1, 3)])
    G2, P2 = rd.subdivide_for_node_reduction(G, PathSpec.from_nodes(G, [0, 1]))
    assert list(G2.w) == [3, 3] and list(P2.nodes) == [0, 2, 1]


# -- negative weights -----------------------------------------------------------------

def test_negative_walk_classification(neg_walk):
    P = PathSpec.from_nodes(neg_walk, NEG_WALK)
    res = rd.classify_negative_edges(neg_walk, P)
    third = {tuple(sorted((NEG_WALK[i], NEG_WALK[i + 1])))
             for i, t in enumerate(res.tags) if t is rd.EdgeClass.SET3}
    assert third == {(1, 2), (4, 5), (5, 6)}
    assert res.common_distance == 8
    others = [t for t in res.tags if t is not rd.EdgeClass.SET3]
    assert all(t is rd.EdgeClass.SET2 for t in others)


def brute_classify(G, P):
    out = []
    for e in P.edges:
        H = nx.MultiGraph()
        H.add_nodes_from(range(G.n))
        for a, b, w, f in G.edges:
            if f != e:
                H.add_edge(a, b, weight=w)
        comp = nx.node_connected_component(H, P.source)
        if P.sink not in comp:
            out.append((rd.EdgeClass.SET1, float("inf")))
            continue
        sub = H.subgraph(comp)
        if any(d["weight"] < 0 for _, _, d in sub.edges(data=True)):
            out.append((rd.EdgeClass.SET2, float("-inf")))
        else:
            out.append((rd.EdgeClass.SET3,
                        nx.dijkstra_path_length(sub, P.source, P.sink)))
    return out


def negative_instance(seed):
    """Sparse graph (many bridges) with a few negative edges and a walk that visits one."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 30))
    G = erdos_renyi(n, n - 1 + int(rng.integers(0, n // 6 + 1)), rng, 1, 20)
    w = G.w.copy()
    neg = rng.random(G.m) < 0.15
    w[neg] = -rng.integers(1, 5, int(neg.sum()))
    G = Graph(G.n, G.u, G.v, w)
    H = nx.Graph()
    H.add_edges_from(zip(G.u.tolist(), G.v.tolist()))
    r, s = 0, n - 1
    walk = nx.shortest_path(H, r, s)
    if neg.any() and rng.random() < 0.9:
        e = int(np.flatnonzero(neg)[0])
        a = walk[int(rng.integers(0, len(walk)))]
        there = nx.shortest_path(H, a, int(G.u[e])) + [int(G.v[e])]
        back = nx.shortest_path(H, int(G.v[e]), a)[1:]
        k = walk.index(a)
        walk = walk[:k] + there + back + walk[k + 1:]
    return G, PathSpec.from_nodes(G, walk)


@pytest.mark.parametrize("seed", range(100))
def test_classification_matches_brute_force(seed):
    G, P = negative_instance(seed)
    res = rd.classify_negative_edges(G, P)
    ref = brute_classify(G, P)
    assert res.tags == [t for t, _ in ref]
    assert res.distances == [d for _, d in ref]


def test_no_negative_edges_means_no_set2():
    G = erdos_renyi(20, 30, 1, 1, 9)
    P = context_for(G, 0, 19).P
    res = rd.classify_negative_edges(G, P)
    assert rd.EdgeClass.SET2 not in res.tags

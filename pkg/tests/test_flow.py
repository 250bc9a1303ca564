import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from flowroute import bulk
from flowroute.flow import (edge_disjoint_paths, has_path, max_flow, min_cut, shortest_distance,
                            shortest_path)
from flowroute.graph import Graph, GraphError, Route
from test_graph import graphs

# s0 a1 e2 b3 c4 f5 t6: two ways out of a, one out of e
TWO_BRANCH = Graph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (3, 6), (4, 6), (2, 5), (5, 6)])


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def test_two_branch_flows_and_distances_without_source():
    g = TWO_BRANCH.remove_node(0)
    assert max_flow(g, 1, 6) == 2
    assert max_flow(g, 2, 6) == 1
    assert shortest_distance(g, 1, 6) == 2
    assert shortest_distance(g, 2, 6) == 2


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_complete_graph_flow(n):
    assert max_flow(complete(n), 0, n - 1) == n - 1


def test_cycle_min_cut_is_two():
    value, cut = min_cut(cycle(6), 0, 3)
    assert value == 2 and len(cut) == 2
    rest = cycle(6).remove_edges(sorted(cut))
    assert not has_path(rest, 0, 3)


def test_disconnected_pair():
    g = Graph(4, [(0, 1), (2, 3)])
    assert max_flow(g, 0, 3) == 0
    assert min_cut(g, 0, 3) == (0, frozenset())
    assert edge_disjoint_paths(g, 0, 3) == []
    assert shortest_path(g, 0, 3) is None and shortest_distance(g, 0, 3) is None


def test_same_endpoints_rejected():
    with pytest.raises(GraphError):
        max_flow(TWO_BRANCH, 2, 2)


def test_shortest_path_prefers_small_ids():
    # two shortest 0 -> 3 paths, via 1 and via 2
    g = Graph(4, [(0, 2), (0, 1), (1, 3), (2, 3)])
    assert shortest_path(g, 0, 3) == Route([0, 1, 3])
    assert shortest_path(g, 3, 0) == Route([3, 1, 0])


def test_oracle_agreement_on_small_graphs():
    rng = random.Random(11)
    for _ in range(120):
        g = oracles.random_graph(rng, 7)
        for s, t in itertools.combinations(g.nodes(), 2):
            f = max_flow(g, s, t)
            assert f == oracles.disjoint_path_count(g, s, t)
            assert f == oracles.min_cut_by_vertex_sets(g, s, t)


def test_literal_edge_subset_enumeration_on_sparse_graphs():
    rng = random.Random(12)
    done = 0
    while done < 40:
        g = oracles.random_graph(rng, 7, min_nodes=3)
        if g.edge_count > 10:
            continue
        done += 1
        for s, t in itertools.combinations(g.nodes(), 2):
            assert max_flow(g, s, t) == oracles.min_cut_by_edge_subsets(g, s, t)


@settings(max_examples=150, deadline=None)
@given(graphs(8), st.data())
def test_decomposition_gives_value_disjoint_valid_routes(g, data):
    if g.node_count < 2:
        return
    s, t = data.draw(st.lists(st.sampled_from(g.nodes()), min_size=2, max_size=2, unique=True))
    routes = edge_disjoint_paths(g, s, t)
    assert len(routes) == max_flow(g, s, t)
    used = set()
    for r in routes:
        assert r.source == s and r.destination == t
        assert r.is_valid_in(g)
        es = {tuple(sorted(e)) for e in r.edges()}
        assert not es & used
        used |= es


@settings(max_examples=150, deadline=None)
@given(graphs(8), st.data())
def test_min_cut_separates(g, data):
    if g.node_count < 2:
        return
    s, t = data.draw(st.lists(st.sampled_from(g.nodes()), min_size=2, max_size=2, unique=True))
    value, cut = min_cut(g, s, t)
    assert value == len(cut) == max_flow(g, s, t)
    assert not has_path(g.remove_edges(sorted(cut)), s, t)


@settings(max_examples=150, deadline=None)
@given(graphs(8), st.data())
def test_adding_an_edge_never_lowers_flow(g, data):
    missing = [(u, v) for u, v in itertools.combinations(range(g.node_count), 2)
               if not g.has_edge(u, v)]
    if g.node_count < 2 or not missing:
        return
    e = data.draw(st.sampled_from(missing))
    h = g.add_edges([e])
    for s, t in itertools.combinations(g.nodes(), 2):
        assert max_flow(h, s, t) >= max_flow(g, s, t)


@settings(max_examples=150, deadline=None)
@given(graphs(9))
def test_distance_symmetry_and_reachability(g):
    for s, t in itertools.combinations(g.nodes(), 2):
        assert shortest_distance(g, s, t) == shortest_distance(g, t, s)
        assert has_path(g, s, t) == (max_flow(g, s, t) >= 1)
        assert shortest_distance(g, s, t) == oracles.hop_distance(g.nodes(), g.edges(), s, t)


@pytest.mark.parametrize("backend", ["numba", "scipy"])
def test_bulk_solver_and_tree_match_reference(backend):
    if backend == "numba" and bulk._unit_flow is None:
        pytest.skip("numba not installed")
    rng = random.Random(13)
    for _ in range(150):
        g = oracles.random_graph(rng, 9)
        if g.node_count > 2 and rng.random() < 0.3:
            g = g.remove_node(rng.randrange(g.node_count))
        solver = bulk.FlowSolver(g, backend)
        tree = bulk.FlowTree(g, solver)
        for s in g.nodes():
            row = tree.values_from(s)
            for t in g.nodes():
                if s != t:
                    assert solver.value(s, t) == row[t] == max_flow(g, s, t)


def test_solver_without_edges():
    g = complete(5)
    solver = bulk.FlowSolver(g)
    stripped = solver.without_edges([(0, 1), (2, 1)])
    assert stripped.value(0, 1) == 2
    assert solver.value(0, 1) == 4
    side = stripped.cut(1, 0)[1]
    assert side.tolist() == [False, True, False, False, False]


def test_hop_matrix_marks_unreachable():
    g = Graph(4, [(0, 1), (1, 2)])
    h = bulk.hop_matrix(g, [0, 3])
    assert h[0].tolist() == [0, 1, 2, bulk.UNREACHABLE]
    assert h[1, 3] == 0 and h[1, 0] == bulk.UNREACHABLE

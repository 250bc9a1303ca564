import random

import pytest

import oracles
from flowroute.frr import FailureSet, SimulationError, forward, delivery_matches_reachability
from flowroute.graph import Graph, GraphError, Route
from flowroute.tables import STANDARD_WEIGHTS, Weights, build_tables_dijkstra, build_tables_maxflow
from flowroute.topology import GeneratorSpec, generate

NAMES = "s a b c d e f g h t".split()
ID = {name: i for i, name in enumerate(NAMES)}
DETOUR_EDGES = ["sa", "ab", "ac", "ah", "bt", "ch", "cd", "de", "ef", "fg", "gt"]
DETOUR = Graph(10, [(ID[x], ID[y]) for x, y in DETOUR_EDGES])
BT_DOWN = FailureSet(links=[(ID["b"], ID["t"])])


def names(ids):
    return ",".join(NAMES[i] for i in ids)


def test_detour_replay():
    tables = build_tables_maxflow(DETOUR, Weights(5, -1))
    out = forward(DETOUR, tables, BT_DOWN, ID["s"], ID["t"])
    assert out.delivered
    assert names(out.visited_order) == "s,a,b,a,c,h,c,d,e,f,g,t"
    assert names(out.final_route) == "s,a,c,d,e,f,g,t"
    assert out.hop_count == 11
    # g hands the packet straight to t, so it never records itself
    assert names(out.visited) == "s,a,b,c,h,d,e,f"


def test_detour_candidate_order_at_c():
    tables = build_tables_maxflow(DETOUR, Weights(5, -1))
    assert names(tables[ID["c"]].next_hops(ID["t"])) == "a,h,d"


def test_adjacent_destination_goes_direct():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    tables = build_tables_maxflow(g, Weights(2, -5))
    out = forward(g, tables, FailureSet(), 0, 2)
    assert out.final_route == Route([0, 2]) and out.hop_count == 1
    assert out.visited == ()


def test_failed_direct_link_falls_back_to_table():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    tables = build_tables_maxflow(g, Weights(2, -5))
    out = forward(g, tables, FailureSet(links=[(2, 0)]), 0, 2)
    assert out.final_route == Route([0, 1, 2])


def test_path_with_failed_link_reports_no_route():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    tables = build_tables_dijkstra(g)
    out = forward(g, tables, FailureSet(links=[(1, 2)]), 0, 3)
    assert not out.delivered and out.final_route is None
    assert out.visited_order == (0, 1, 0)
    assert out.hop_count == 2


def test_failed_node_is_skipped():
    g = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    tables = build_tables_dijkstra(g)
    out = forward(g, tables, FailureSet(nodes=[1]), 0, 3)
    assert out.final_route == Route([0, 2, 3]) and out.hop_count == 2


def test_preconditions():
    tables = build_tables_dijkstra(DETOUR)
    with pytest.raises(GraphError):
        forward(DETOUR, tables, FailureSet(), 1, 1)
    with pytest.raises(GraphError):
        forward(DETOUR, tables, FailureSet(nodes=[ID["t"]]), 0, ID["t"])
    with pytest.raises(GraphError):
        FailureSet(links=[(0, 9)]).validate(DETOUR)


def test_hop_budget_exhaustion_raises():
    tables = build_tables_maxflow(DETOUR, Weights(5, -1))
    with pytest.raises(SimulationError):
        forward(DETOUR, tables, BT_DOWN, ID["s"], ID["t"], hop_budget=5)


def test_failure_set_apply():
    g = FailureSet(links=[(1, 0)], nodes=[3]).apply(DETOUR)
    assert not g.has_edge(0, 1) and not g.is_present(3)
    assert not FailureSet() and FailureSet(nodes=[1])


def random_instance(rng: random.Random):
    family = rng.choice(["er", "ba", "ws"])
    n = rng.randint(5, 14)
    if family == "er":
        spec = GeneratorSpec("er", n, rng.randrange(2**32), er_c=rng.choice([0.2, 0.3, 0.5]))
    elif family == "ba":
        spec = GeneratorSpec("ba", n, rng.randrange(2**32), ba_m=rng.randint(1, 3))
    else:
        spec = GeneratorSpec("ws", n, rng.randrange(2**32), ws_k=rng.choice([2, 4]), ws_p=0.4)
    g = generate(spec)
    s, t = rng.sample(range(n), 2)
    edges = g.edges()
    links = rng.sample(edges, rng.randint(0, min(len(edges), 5)))
    others = [v for v in range(n) if v not in (s, t)]
    nodes = rng.sample(others, rng.randint(0, min(2, len(others))))
    return g, FailureSet(links, nodes), s, t


def check_outcome(g, tables, failures, s, t, complete=True):
    out = forward(g, tables, failures, s, t)
    live = failures.apply(g)
    if complete:
        assert out.delivered == oracles.connected(live, s, t)
    elif out.delivered:
        assert oracles.connected(live, s, t)
    assert out.hop_count <= 2 * g.edge_count
    assert out.hop_count == len(out.visited_order) - 1
    if out.delivered:
        r = out.final_route
        assert (r.source, r.destination) == (s, t)
        assert r.is_valid_in(live)
        assert out.visited_order[-1] == t
    # every move is over a live link
    for u, v in zip(out.visited_order, out.visited_order[1:]):
        assert live.has_edge(u, v)
    return out


def test_theorem_property_and_validity():
    rng = random.Random(31)
    for _ in range(150):
        g, failures, s, t = random_instance(rng)
        tables = build_tables_maxflow(g, rng.choice(STANDARD_WEIGHTS))
        check_outcome(g, tables, failures, s, t)
        assert delivery_matches_reachability(g, failures, s, t, tables)
        # shortest-path tables hold no detours, so only soundness is promised
        check_outcome(g, build_tables_dijkstra(g), failures, s, t, complete=False)


def test_backtracks_only_when_stuck():
    rng = random.Random(32)
    for _ in range(100):
        g, failures, s, t = random_instance(rng)
        tables = build_tables_maxflow(g, Weights(5, -1))
        out = forward(g, tables, failures, s, t)
        trace = out.visited_order
        stack = [s]
        seen = set()
        for k, (u, v) in enumerate(zip(trace, trace[1:])):
            if v == t:
                break
            seen.add(u)
            if len(stack) > 1 and v == stack[-2]:
                # at u nothing usable was left at that moment
                usable = [c.neighbor for c in tables[u].candidates(t)
                          if c.neighbor not in seen and not failures.node_failed(c.neighbor)
                          and not failures.link_failed(u, c.neighbor)]
                assert usable == []
                stack.pop()
            else:
                stack.append(v)


def test_deterministic():
    rng = random.Random(33)
    g, failures, s, t = random_instance(rng)
    tables = build_tables_maxflow(g, Weights(2, -5))
    a = forward(g, tables, failures, s, t)
    b = forward(g, build_tables_maxflow(g, Weights(2, -5)), failures, s, t)
    assert a == b

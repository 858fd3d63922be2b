import math

import pytest
from hypothesis import given, settings, strategies as st

from iotembed.routing import (BlockingError, NoRouteError, Residuals, WeightMode, all_simple_paths,
                              demands_of, flow_balance, is_simple_path, k_shortest_paths, path_weight,
                              plan_from_paths, route_all, route_demands, shortest_path)

from conftest import chain_bp, network, node


def test_shortest_path_hops_and_tiebreak(square4):
    # two 2-hop routes 0->3; the lexicographically smaller wins
    assert shortest_path(square4, 0, 3) == (0, 1, 3)
    assert shortest_path(square4, 2, 2) == (2,)


def test_shortest_path_respects_residual(square4):
    residual = {0: 250, 1: 50, 2: 250, 3: 250}
    assert shortest_path(square4, 0, 3, residual=residual, demand=100) == (0, 2, 3)
    with pytest.raises(NoRouteError):
        shortest_path(square4, 0, 3, residual={0: 250, 1: 0, 2: 0, 3: 250}, demand=100)


def test_destination_needs_no_send_room(line3):
    assert shortest_path(line3, 0, 2, residual={0: 100, 1: 100, 2: 0}, demand=100) == (0, 1, 2)


def test_link_power_prefers_short_hops():
    # direct 0-2 link is 400 m; two 200 m hops pay less amplifier power
    nodes = [node(0, 0, 0), node(1, 200, 0), node(2, 400, 0)]
    net = network(nodes, [(0, 1), (1, 2), (0, 2)])
    assert shortest_path(net, 0, 2, WeightMode.HOPS) == (0, 2)
    assert shortest_path(net, 0, 2, WeightMode.LINK_POWER) == (0, 1, 2)
    assert path_weight(net, (0, 1, 2), WeightMode.LINK_POWER) < path_weight(net, (0, 2), WeightMode.LINK_POWER)


def test_k_shortest_order_and_all(square4):
    assert k_shortest_paths(square4, 0, 3, 1) == [(0, 1, 3)]
    assert k_shortest_paths(square4, 0, 3, 5) == [(0, 1, 3), (0, 2, 3)]
    assert k_shortest_paths(square4, 0, 3, math.inf) == [(0, 1, 3), (0, 2, 3)]
    with pytest.raises(ValueError):
        k_shortest_paths(square4, 0, 3, 0)


def _random_graph(seed, n, extra):
    import random
    rnd = random.Random(seed)
    nodes = [node(i, rnd.uniform(0, 300), rnd.uniform(0, 300)) for i in range(n)]
    edges = {(rnd.randrange(i), i) for i in range(1, n)}
    for _ in range(extra):
        a, b = sorted(rnd.sample(range(n), 2))
        edges.add((a, b))
    return network(nodes, sorted(edges))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 8), st.integers(0, 8), st.integers(1, 12),
       st.sampled_from(list(WeightMode)))
def test_k_shortest_matches_brute_force(seed, n, extra, k, mode):
    net = _random_graph(seed, n, extra)
    src, dst = 0, n - 1
    brute = sorted(((path_weight(net, p, mode), p) for p in all_simple_paths(net, src, dst)))
    got = k_shortest_paths(net, src, dst, k, mode)
    assert len(got) == min(k, len(brute))
    for p in got:
        assert is_simple_path(net, p) and p[0] == src and p[-1] == dst
    ws = [path_weight(net, p, mode) for p in got]
    assert ws == sorted(ws)
    # the weights match the k best up to float noise, and no cheaper path is missing
    for (bw, _), w in zip(brute, ws):
        assert w == pytest.approx(bw, rel=1e-12, abs=1e-12)


def test_flow_balance():
    bal = flow_balance((0, 1, 2), 50)
    assert bal == {0: 50, 1: 0, 2: -50}


def test_plan_from_paths_intra_node(line3):
    bp = chain_bp(0)
    assignment = {(0, 0): 0, (0, 1): 0, (0, 2): 2}
    plan = plan_from_paths([bp], assignment, {(0, 1): (0, 1, 2)})
    assert plan.paths == {(0, 0): (), (0, 1): (0, 1, 2)}
    assert plan.link_loads == {(0, 1): 100, (1, 2): 100}
    assert plan.demand_matrix == {(0, 2): 100}


def test_demands_skip_unembedded(line3):
    bps = [chain_bp(0), chain_bp(1)]
    assignment = {(1, 0): 0, (1, 1): 1, (1, 2): 2}
    assert [d[0] for d in demands_of(bps, assignment)] == [(1, 0), (1, 1)]


def test_route_all_threshold_fallback(line3):
    # 200 kbps cannot pass under a 0.6 * 250 = 150 kbps cap, so the full capacity is used
    bp = chain_bp(0, kbps=(200, 50))
    assignment = {(0, 0): 0, (0, 1): 1, (0, 2): 2}
    plan = route_all(line3, [bp], assignment, WeightMode.HOPS, node_util_cap=0.6)
    assert plan.paths[(0, 0)] == (0, 1)


def test_route_demands_rolls_back(line3):
    res = Residuals(line3)
    demands = [((0, 0), 0, 1, 200.0), ((0, 1), 0, 2, 100.0)]
    with pytest.raises(BlockingError) as exc:
        route_demands(res, demands, WeightMode.HOPS)
    assert exc.value.demand == (0, 1)
    assert all(v == 0 for v in res.out_used.values())
    assert all(v == 0 for v in res.in_used.values())


def test_residual_arrival_limit(line3):
    res = Residuals(line3)
    res.commit((0, 1), 200.0)
    # node 1 can only take 40 kbps more before its queue saturates
    assert res.admits((2, 1), 40.0)
    assert not res.admits((2, 1), 41.0)

import time

import pytest

from iotembed.feasibility import EmbeddingOptions, check_solution
from iotembed.heuristics import efficiency_order, embed_eluse, embed_rese, embed_rlse
from iotembed.instances import TABLE1, generate_bps, generate_building, generate_tiny
from iotembed.model import IoTNode
from iotembed.routing import WeightMode, route_all
from iotembed.solver import ENERGY, LATENCY, Budget, Certificate, solve_exact

from conftest import chain_bp, network, node


def test_table1_efficiency_order():
    nodes = [IoTNode(i, 0, 10.0 * i, 0.0, t.mhz, t.ram_kb, t.idle_mw, t.max_mw, frozenset({0}), mcu_type=t.name)
             for i, t in enumerate(TABLE1)]
    net = network(nodes, [(i, i + 1) for i in range(4)])
    names = [net.node[i].mcu_type for i in efficiency_order(net)]
    assert names == ["MSP432P4", "MSP430F5", "MSP430FR5", "MSP430F1", "MSP430FR6"]


def test_single_bp_consolidated(line3):
    sol = embed_rese(line3, [chain_bp(0)])
    assert set(sol.assignment.values()) == {0}
    assert sol.metrics.tnp == 0 and sol.blocked == ()


def test_rese_takes_cheapest_controller_first():
    # only room for one of the two on the efficient node
    nodes = [node(0, 0, 0, mcu=48, peak=16), node(1, 100, 0, mcu=48, peak=40)]
    net = network(nodes, [(0, 1)])
    big = chain_bp(0, mhz=(10, 20, 10))
    small = chain_bp(1, mhz=(10, 5, 10))
    sol = embed_rese(net, [big, small])
    assert {sol.assignment[(1, v)] for v in range(3)} == {0}


def test_rese_blocks_and_rolls_back(line3):
    bps = [chain_bp(0, mhz=(4, 4, 4)), chain_bp(1, mhz=(4, 100, 4))]
    sol = embed_rese(line3, bps)
    assert sol.blocked == (1,)
    assert all(bp == 0 for bp, _ in sol.assignment)


def _five_node_congestion():
    # two sensors (0 and 4) reach the controller node 3 through relays 1 or 2
    nodes = [node(0, 0, 0, funcs=(0,)), node(1, 100, 0, funcs=()), node(2, 100, 100, funcs=()),
             node(3, 200, 50, funcs=(1, 2)), node(4, 0, 100, funcs=(3,))]
    net = network(nodes, [(0, 1), (0, 2), (1, 3), (2, 3), (4, 1), (4, 2)], functions=(0, 1, 2, 3))
    a = chain_bp(0, kbps=(100, 50))
    b = chain_bp(1, kbps=(100, 50), funcs=(3, 1, 2))
    return net, [a, b]


def test_rlse_cap_spreads_traffic_and_lowers_latency():
    net, bps = _five_node_congestion()
    capped = embed_rlse(net, bps, threshold=0.6)
    plain = route_all(net, bps, capped.assignment, WeightMode.HOPS, 1.0)
    relays = {capped.routing.paths[(0, 0)][1], capped.routing.paths[(1, 0)][1]}
    assert relays == {1, 2}
    from iotembed.metrics import evaluate
    assert capped.metrics.tl < evaluate(net, bps, capped.assignment, plain).tl


def test_rlse_threshold_one_is_plain_shortest_path():
    net, bps = _five_node_congestion()
    one = embed_rlse(net, bps, threshold=1.0)
    assert one.assignment == embed_rese(net, bps).assignment
    assert one.routing == route_all(net, bps, one.assignment, WeightMode.HOPS)


@pytest.mark.parametrize("t", [0, -0.1, 1.5])
def test_rlse_threshold_range(line3, t):
    with pytest.raises(ValueError):
        embed_rlse(line3, [chain_bp(0)], threshold=t)


def test_eluse_seeded():
    net = generate_building(0)
    bps = generate_bps(0, 12, "same", net.zones)
    a = embed_eluse(net, bps, seed=3)
    b = embed_eluse(net, bps, seed=3)
    assert (a.assignment, a.routing) == (b.assignment, b.routing)
    others = [embed_eluse(net, bps, seed=s).assignment for s in range(4, 8)]
    assert any(o != a.assignment for o in others)


@pytest.mark.parametrize("zone_mode,coex", [("same", False), ("cross", True)])
def test_heuristics_feasible_and_fast(zone_mode, coex):
    net = generate_building(0)
    bps = generate_bps(0, 12, zone_mode, net.zones)
    opts = EmbeddingOptions(coex, zone_mode)
    for fn in (lambda: embed_rese(net, bps, opts), lambda: embed_rlse(net, bps, opts),
               lambda: embed_eluse(net, bps, opts, seed=1)):
        t0 = time.perf_counter()
        sol = fn()
        assert time.perf_counter() - t0 < 1.0
        assert check_solution(net, bps, sol.assignment, sol.routing, opts) == []
        assert len(sol.embedded) + len(sol.blocked) == len(bps)


def _replay_audit(net, bps, sol, opts):
    """RESE never skips a strictly more efficient node that could have taken the vnode."""
    mcu = {n.id: n.mcu_mhz for n in net.nodes}
    ram = {n.id: n.ram_kb for n in net.nodes}
    for bp in sorted(bps, key=lambda b: (b.controller.mcu_mhz, b.id)):
        if bp.id in sol.blocked:
            continue
        used = set()
        for v in bp.vnodes:
            host = sol.assignment[(bp.id, v.id)]
            for n in net.nodes:
                if n.efficiency <= net.node[host].efficiency:
                    continue
                fits = (v.function in n.functions and v.zone_ok(n.zone) and mcu[n.id] >= v.mcu_mhz
                        and ram[n.id] >= v.ram_kb and not (opts.coexistence and n.id in used))
                assert not fits, f"bp {bp.id} vnode {v.id} skipped node {n.id}"
            mcu[host] -= v.mcu_mhz
            ram[host] -= v.ram_kb
            used.add(host)


@pytest.mark.parametrize("seed", range(4))
def test_rese_audit_trail(seed):
    net = generate_building(seed)
    for zm, coex in (("same", False), ("cross", True)):
        bps = generate_bps(seed, 12, zm, net.zones)
        opts = EmbeddingOptions(coex, zm)
        _replay_audit(net, bps, embed_rese(net, bps, opts), opts)


@pytest.mark.parametrize("seed", range(25))
def test_heuristics_never_beat_the_optimum(seed):
    net, bps = generate_tiny(seed)
    for coex in (False, True):
        opts = EmbeddingOptions(coexistence=coex)
        best = solve_exact(net, bps, opts, ENERGY, Budget(k_paths=None))
        best_tl = solve_exact(net, bps, opts, LATENCY, Budget(k_paths=None))
        if best.certificate != Certificate.PROVED_OPTIMAL:
            continue
        for sol in (embed_rese(net, bps, opts), embed_rlse(net, bps, opts), embed_eluse(net, bps, opts, seed=seed)):
            assert check_solution(net, bps, sol.assignment, sol.routing, opts) == []
            if not sol.blocked:
                assert sol.metrics.power >= best.objective
                assert sol.metrics.tl >= best_tl.objective

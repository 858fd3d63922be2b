from dataclasses import replace

import pytest

from iotembed.feasibility import Constraint, EmbeddingOptions, check_solution
from iotembed.model import ANY
from iotembed.routing import RoutingPlan, plan_from_paths

from conftest import chain_bp, network, node

ROUTED = {(0, 0): (0, 1), (0, 1): (1, 2)}
SPREAD = {(0, 0): 0, (0, 1): 1, (0, 2): 2}


def kinds(violations):
    return {v.constraint for v in violations}


def check(net, bps, assignment, paths, coexistence=False, plan=None):
    plan = plan or plan_from_paths(bps, assignment, paths)
    return check_solution(net, bps, assignment, plan, EmbeddingOptions(coexistence=coexistence))


def test_clean_solution(line3):
    bp = chain_bp(0)
    assert check(line3, [bp], SPREAD, ROUTED) == []
    assert check(line3, [bp], SPREAD, ROUTED, coexistence=True) == []


def test_node_unique(line3):
    bp = chain_bp(0)
    plan = RoutingPlan({(0, 0): (0, 1)}, {(0, 1): 100})
    out = check(line3, [bp], {(0, 0): 0, (0, 1): 1}, {}, plan=plan)
    assert kinds(out) == {Constraint.NODE_UNIQUE}
    out = check(line3, [bp], {**SPREAD, (0, 2): 99}, {}, plan=plan)
    assert kinds(out) == {Constraint.NODE_UNIQUE}


def test_coexist(line3):
    bp = chain_bp(0)
    a = {(0, 0): 0, (0, 1): 0, (0, 2): 2}
    paths = {(0, 1): (0, 1, 2)}
    assert check(line3, [bp], a, paths) == []
    out = check(line3, [bp], a, paths, coexistence=True)
    assert kinds(out) == {Constraint.COEXIST}
    assert out[0].entities == (0, 0, 0, 1)


def test_mcu_cap(line3):
    bp = chain_bp(0, mhz=(30, 30, 4))
    out = check(line3, [bp], {(0, 0): 1, (0, 1): 1, (0, 2): 2}, {(0, 1): (1, 2)})
    assert kinds(out) == {Constraint.MCU_CAP}
    assert out[0].measured == 60 and out[0].allowed == 48


def test_ram_cap(line3):
    bp = chain_bp(0, ram=(200, 100, 2))
    out = check(line3, [bp], {(0, 0): 1, (0, 1): 1, (0, 2): 2}, {(0, 1): (1, 2)})
    assert kinds(out) == {Constraint.RAM_CAP}


def test_func():
    nodes = [node(0, 0, 0), node(1, 100, 0, funcs=(0, 2)), node(2, 200, 0)]
    net = network(nodes, [(0, 1), (1, 2)])
    out = check(net, [chain_bp(0)], SPREAD, ROUTED)
    assert kinds(out) == {Constraint.FUNC}
    assert out[0].entities == (0, 1, 1)


def test_zone():
    nodes = [node(0, 0, 0), node(1, 100, 0), node(2, 200, 0, zone=1)]
    net = network(nodes, [(0, 1), (1, 2)], zones=(0, 1))
    out = check(net, [chain_bp(0, zones=(0, ANY, 0))], SPREAD, ROUTED)
    assert kinds(out) == {Constraint.ZONE}


def test_flow_undeclared_link(line3):
    out = check(line3, [chain_bp(0)], {(0, 0): 0, (0, 1): 0, (0, 2): 2}, {(0, 1): (0, 2)})
    assert kinds(out) == {Constraint.FLOW}


def test_flow_tampered_loads(line3):
    bp = chain_bp(0)
    plan = plan_from_paths([bp], SPREAD, ROUTED)
    plan = replace(plan, link_loads={**plan.link_loads, (0, 1): 90.0})
    assert kinds(check(line3, [bp], SPREAD, ROUTED, plan=plan)) == {Constraint.FLOW}


def test_split(line3):
    paths = {(0, 0): (0, 1, 0, 1), (0, 1): (1, 2)}
    out = check(line3, [chain_bp(0)], SPREAD, paths)
    assert kinds(out) == {Constraint.SPLIT}


def test_link_cap(line3):
    bps = [chain_bp(0, kbps=(150, 50)), chain_bp(1, kbps=(150, 50))]
    a = {(b, v): h for b in (0, 1) for v, h in ((0, 0), (1, 1), (2, 1))}
    paths = {(0, 0): (0, 1), (1, 0): (0, 1)}
    out = check(line3, bps, a, paths)
    assert kinds(out) == {Constraint.LINK_CAP}
    assert out[0].entities == (0,) and out[0].measured == 300


def test_path_endpoint(line3):
    bp = chain_bp(0)
    plan = RoutingPlan({(0, 0): (2, 1), (0, 1): (1, 2)}, {(2, 1): 100, (1, 2): 100})
    out = check(line3, [bp], SPREAD, {}, plan=plan)
    assert kinds(out) == {Constraint.PATH_ENDPOINT}


def test_intra_node_demand_must_stay_put(line3):
    bp = chain_bp(0)
    a = {(0, 0): 1, (0, 1): 1, (0, 2): 2}
    plan = RoutingPlan({(0, 0): (1, 0, 1), (0, 1): (1, 2)}, {(1, 0): 100, (0, 1): 100, (1, 2): 100})
    assert Constraint.PATH_ENDPOINT in kinds(check(line3, [bp], a, {}, plan=plan))


@pytest.mark.parametrize("c", list(Constraint))
def test_violation_str(c):
    from iotembed.feasibility import Violation
    assert str(Violation(c, (1, 2), 3, 4)).startswith(c.value)

import pickle
from dataclasses import replace

from iotembed.model import ANY, VirtualLink, WirelessLink, validate_instance
from iotembed.instances import generate_building

from conftest import chain_bp, network, node


def test_link_endpoints_normalised():
    assert WirelessLink(3, 1, 10.0) == WirelessLink(1, 3, 10.0)
    assert WirelessLink(0, 1, 100.0).power_per_kbps == 0.4 + 100.0**2 * 1.3e-5


def test_valid_instance(line3):
    assert validate_instance(line3, [chain_bp(0)]) == []


def test_invalid_instance_reports_everything(line3):
    bad_node = replace(line3.nodes[0], mcu_mhz=0, idle_cpu_mw=20)
    links = line3.links + (WirelessLink(0, 1, 100.0),)
    net = replace(line3, nodes=(bad_node,) + line3.nodes[1:], links=links)
    bp = chain_bp(0, kbps=(0, 100), zones=(7, ANY, 0))
    bp = replace(bp, vlinks=bp.vlinks + (VirtualLink(0, 9, 5),))
    msgs = validate_instance(net, [bp])
    joined = "\n".join(msgs)
    for frag in ("mcu_capacity", "idle_cpu_power", "duplicate link", "unknown zone 7", "dangling", "traffic"):
        assert frag in joined
    assert validate_instance(net, [bp]) == msgs
    assert msgs.index(next(m for m in msgs if 'mcu_capacity' in m)) < msgs.index(next(m for m in msgs if 'dangling' in m))


def test_disconnected_and_wrong_distance():
    nodes = [node(0, 0, 0), node(1, 100, 0), node(2, 300, 0)]
    net = network(nodes, [(0, 1)])
    assert any("not connected" in m for m in validate_instance(net, []))
    net = replace(net, links=(WirelessLink(0, 1, 99.0), WirelessLink(1, 2, 200.0)))
    assert any("disagrees" in m for m in validate_instance(net, []))


def test_position_outside_area():
    net = network([node(0, 600, 0), node(1, 0, 0)], [(0, 1)], area=(500, 500))
    assert any("outside area" in m for m in validate_instance(net, []))


def test_network_pickles_without_caches():
    net = generate_building(0)
    _ = net.graph, net.neighbors
    clone = pickle.loads(pickle.dumps(net))
    assert clone == net
    assert clone.neighbors == net.neighbors

"""Seeded generators for the smart-building mesh, BP workloads and tiny test instances."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import (ANY, BusinessProcess, Coefficients, IoTNode, PhysicalNetwork, VirtualLink,
                    VirtualNode, WirelessLink, ZoneMode, euclid)


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class MCUType:
    name: str
    mhz: float
    ram_kb: float
    idle_mw: float
    max_mw: float


# MSP430/MSP432 processing modules
TABLE1 = (
    MCUType("MSP430F1", 8, 64, 1, 8),
    MCUType("MSP430FR5", 16, 64, 1, 14),
    MCUType("MSP430FR6", 16, 128, 1, 20),
    MCUType("MSP430F5", 25, 512, 1, 14),
    MCUType("MSP432P4", 48, 256, 1, 16),
)

SENSING = (0, 1, 2, 3)
CONTROL = 4
ACTUATING = (5, 6, 7, 8)
FUNCTION_NAMES = {0: "motion", 1: "temperature", 2: "sound", 3: "smoke", 4: "control",
                  5: "alarm", 6: "sprinkler", 7: "door", 8: "display"}


@dataclass(frozen=True)
class BuildingParams:
    zones: int = 5
    nodes_per_zone: int = 6
    area: tuple[float, float] = (500.0, 500.0)
    target_links: int = 89
    fleet: tuple[MCUType, ...] = TABLE1
    control_type: str = "MSP432P4"
    coefficients: Coefficients = field(default_factory=Coefficients)


@dataclass(frozen=True)
class WorkloadParams:
    mcu_range: tuple[int, int] = (4, 30)  # MHz, inclusive
    traffic_range: tuple[int, int] = (50, 200)  # kbps, inclusive
    ram_range: tuple[int, int] = (2, 16)  # kB, inclusive


def _rng(seed, *stream) -> np.random.Generator:
    return np.random.default_rng([int(seed), *stream])


def generate_building(seed: int = 0, params: BuildingParams = BuildingParams()) -> PhysicalNetwork:
    """Smart-building mesh: zones are vertical strips, links join nodes within radio range.

    The range is the smallest radius giving the link count closest to the
    target; leftover components are joined by their shortest gaps.
    """
    rng = _rng(seed, 1)
    width, height = params.area
    strip = width / params.zones
    cf = params.coefficients
    fleet = {t.name: t for t in params.fleet}
    if params.control_type not in fleet:
        raise GenerationError(f"control type {params.control_type} not in fleet")
    if params.nodes_per_zone < 2:
        raise GenerationError("each zone needs at least two nodes to cover all functions")

    nodes = []
    for z in range(params.zones):
        for j in range(params.nodes_per_zone):
            nid = z * params.nodes_per_zone + j
            x = round(float(rng.uniform(z * strip, (z + 1) * strip)), 2)
            y = round(float(rng.uniform(0, height)), 2)
            mcu = params.fleet[j % len(params.fleet)]
            # consecutive node pairs cover all four sensing and actuating functions
            s0 = (2 * j + z) % 4
            a0 = (2 * j + z + 1) % 4
            funcs = {SENSING[s0], SENSING[(s0 + 1) % 4], ACTUATING[a0], ACTUATING[(a0 + 1) % 4]}
            if mcu.name == params.control_type:
                funcs.add(CONTROL)
            nodes.append(IoTNode(
                id=nid, zone=z, x=min(x, width), y=min(y, height),
                mcu_mhz=mcu.mhz, ram_kb=mcu.ram_kb, idle_cpu_mw=mcu.idle_mw, max_cpu_mw=mcu.max_mw,
                functions=frozenset(funcs), idle_net_mw=cf.idle_net, capacity_kbps=cf.capacity,
                mcu_type=mcu.name))

    every = set(SENSING) | {CONTROL} | set(ACTUATING)
    for z in range(params.zones):
        have = set().union(*(n.functions for n in nodes if n.zone == z))
        if have != every:
            raise GenerationError(f"zone {z} lacks functions {sorted(every - have)}")

    links = _radio_links(nodes, params.target_links, cf)
    return PhysicalNetwork(
        nodes=tuple(nodes), links=tuple(links), zones=tuple(range(params.zones)),
        functions=tuple(sorted(every)), area=(width, height), coefficients=cf,
        meta={"seed": int(seed), "area_m": [width, height], "achieved_links": len(links)},
    )


def _radio_links(nodes, target: int, cf: Coefficients) -> list[WirelessLink]:
    pairs = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            pairs.append((euclid(a, b), a.id, b.id))
    pairs.sort()
    dists = [p[0] for p in pairs]
    target = max(0, min(target, len(pairs)))

    # link count is a step function of the radius; pick the step nearest the
    # target, smaller radius on ties
    def count(r):
        lo, hi = 0, len(dists)
        while lo < hi:
            mid = (lo + hi) // 2
            if dists[mid] <= r:
                lo = mid + 1
            else:
                hi = mid
        return lo

    best_r, best_gap = 0.0, target
    for r in sorted(set(dists)):
        gap = abs(count(r) - target)
        if gap < best_gap:
            best_r, best_gap = r, gap
        if count(r) > target:
            break
    chosen = [(d, a, b) for d, a, b in pairs if d <= best_r] if target else []

    parent = {n.id: n.id for n in nodes}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for _, a, b in chosen:
        parent[find(a)] = find(b)
    for d, a, b in pairs:
        if find(a) != find(b):
            parent[find(a)] = find(b)
            chosen.append((d, a, b))
    chosen.sort(key=lambda t: (t[1], t[2]))
    return [WirelessLink(a, b, d, cf.e_pbt, cf.f_tr) for d, a, b in chosen]


def generate_bps(seed: int, count: int, zone_mode: ZoneMode | str, zones, params: WorkloadParams = WorkloadParams(),
                 first_id: int = 0) -> list[BusinessProcess]:
    """Sensor -> controller -> actuator chains with uniform integer demands."""
    zone_mode = ZoneMode(zone_mode)
    zones = list(zones)
    if count < 1:
        raise GenerationError("count must be >= 1")
    if zone_mode == ZoneMode.CROSS_ZONE and len(zones) < 2:
        raise GenerationError("cross-zone workloads need at least two zones")
    rng = _rng(seed, 2)
    lo, hi = params.mcu_range
    tlo, thi = params.traffic_range
    rlo, rhi = params.ram_range

    def mhz():
        return int(rng.integers(lo, hi + 1))

    def ram():
        return int(rng.integers(rlo, rhi + 1))

    out = []
    for i in range(count):
        z1 = zones[int(rng.integers(len(zones)))]
        if zone_mode == ZoneMode.SAME_ZONE:
            z2 = z1
        else:
            others = [z for z in zones if z != z1]
            z2 = others[int(rng.integers(len(others)))]
        sensor = VirtualNode(0, SENSING[int(rng.integers(4))], z1, mhz(), ram(), "sensor")
        ctrl = VirtualNode(1, CONTROL, ANY, mhz(), ram(), "controller")
        act = VirtualNode(2, ACTUATING[int(rng.integers(4))], z2, mhz(), ram(), "actuator")
        t1 = int(rng.integers(tlo, thi + 1))
        t2 = int(rng.integers(tlo, thi + 1))
        out.append(BusinessProcess(first_id + i, (sensor, ctrl, act),
                                   (VirtualLink(0, 1, t1), VirtualLink(1, 2, t2))))
    return out


def mid_size_params() -> BuildingParams:
    """12 nodes in two zones, keeping the full-building link density."""
    return BuildingParams(zones=2, nodes_per_zone=6, area=(200.0, 500.0), target_links=36)


def generate_tiny(seed: int, max_nodes: int = 6, max_bps: int = 2, zone_mode=None) -> tuple[PhysicalNetwork, list[BusinessProcess]]:
    """A hand-sized random instance small enough for exhaustive enumeration.

    Nodes sit in a 150 m square, the graph is a random spanning tree plus at
    most one chord, and every function is offered by some node of each zone.
    """
    rng = _rng(seed, 3)
    n = int(rng.integers(3, max_nodes + 1))
    nzones = 1 if n < 4 else int(rng.integers(1, 3))
    cf = Coefficients()
    nodes = []
    funcs_all = (0, 1, 2)  # sensing, control, actuating
    for i in range(n):
        t = TABLE1[int(rng.integers(len(TABLE1)))]
        zone = i % nzones
        funcs = {f for f in funcs_all if rng.random() < 0.6}
        nodes.append([i, zone, round(float(rng.uniform(0, 150)), 2), round(float(rng.uniform(0, 150)), 2), t, funcs])
    for z in range(nzones):
        members = [nd for nd in nodes if nd[1] == z]
        for f in funcs_all:
            if not any(f in nd[5] for nd in members):
                members[int(rng.integers(len(members)))][5].add(f)
    built = tuple(IoTNode(i, z, x, y, t.mhz, t.ram_kb, t.idle_mw, t.max_mw, frozenset(fs),
                          cf.idle_net, cf.capacity, t.name) for i, z, x, y, t, fs in nodes)
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(i))
        edges.add((j, i))
    if n >= 4 and rng.random() < 0.7:
        a, b = sorted(int(v) for v in rng.choice(n, size=2, replace=False))
        edges.add((a, b))
    links = tuple(WirelessLink(a, b, euclid(built[a], built[b]), cf.e_pbt, cf.f_tr) for a, b in sorted(edges))
    net = PhysicalNetwork(built, links, tuple(range(nzones)), funcs_all, (150.0, 150.0), cf,
                          meta={"seed": int(seed), "area_m": [150.0, 150.0], "achieved_links": len(links)})

    nb = int(rng.integers(1, max_bps + 1))
    bps = []
    for b in range(nb):
        z1 = int(rng.integers(nzones))
        if zone_mode == ZoneMode.CROSS_ZONE and nzones > 1:
            z2 = 1 - z1
        else:
            z2 = z1 if rng.random() < 0.5 or nzones == 1 else 1 - z1
        v = (VirtualNode(0, 0, z1, int(rng.integers(4, 17)), int(rng.integers(2, 17)), "sensor"),
             VirtualNode(1, 1, ANY, int(rng.integers(4, 17)), int(rng.integers(2, 17)), "controller"),
             VirtualNode(2, 2, z2, int(rng.integers(4, 17)), int(rng.integers(2, 17)), "actuator"))
        vl = (VirtualLink(0, 1, int(rng.integers(50, 201))), VirtualLink(1, 2, int(rng.integers(50, 201))))
        bps.append(BusinessProcess(b, v, vl))
    return net, bps


__all__ = ["TABLE1", "BuildingParams", "WorkloadParams", "GenerationError", "generate_building",
           "generate_bps", "generate_tiny", "mid_size_params", "SENSING", "ACTUATING", "CONTROL"]


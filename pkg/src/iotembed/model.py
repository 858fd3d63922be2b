"""Domain types for the physical IoT layer and the virtual business-process layer.

Every type here is an immutable value. Rates are kbps throughout; with the
default 1 kb packet, kbps and packets/s are numerically equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx

ANY = "any"  # zone sentinel: the virtual node may be hosted in any zone


class ZoneMode(str, Enum):
    SAME_ZONE = "same"
    CROSS_ZONE = "cross"


@dataclass(frozen=True)
class Coefficients:
    """Model constants shared by the whole instance (configurable per file)."""

    e_pbt: float = 0.2  # mW per kbps, per transceiver electronics
    f_tr: float = 1.3e-5  # mW per kbps per m^2, transmit amplifier
    idle_net: float = 20.0  # mW per active network module
    capacity: float = 250.0  # kbps per node
    packet_kb: float = 1.0
    table_step: float = 10.0  # kbps
    alpha: float = 30.0
    beta: float = 1.0
    gamma: float = 1.0


@dataclass(frozen=True)
class IoTNode:
    id: int
    zone: int
    x: float
    y: float
    mcu_mhz: float
    ram_kb: float
    idle_cpu_mw: float
    max_cpu_mw: float
    functions: frozenset[int]
    idle_net_mw: float = 20.0
    capacity_kbps: float = 250.0
    mcu_type: str = ""

    @property
    def efficiency(self) -> float:
        """Processing power efficiency in MHz per mW."""
        return self.mcu_mhz / self.max_cpu_mw


@dataclass(frozen=True)
class WirelessLink:
    a: int
    b: int
    dist_m: float
    e_pbt: float = 0.2
    f_tr: float = 1.3e-5

    def __post_init__(self):
        # store endpoints as an ordered pair so equal links compare equal
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def power_per_kbps(self) -> float:
        """mW drawn per kbps carried: Tx+Rx electronics plus free-space amplifier."""
        return 2 * self.e_pbt + self.dist_m**2 * self.f_tr


@dataclass(frozen=True)
class PhysicalNetwork:
    nodes: tuple[IoTNode, ...]
    links: tuple[WirelessLink, ...]
    zones: tuple[int, ...]
    functions: tuple[int, ...]
    area: tuple[float, float] = (500.0, 500.0)
    coefficients: Coefficients = field(default_factory=Coefficients)
    meta: Mapping = field(default_factory=dict, compare=False, hash=False)

    @cached_property
    def node(self) -> dict[int, IoTNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def link(self) -> dict[tuple[int, int], WirelessLink]:
        """Lookup by directed pair; both directions map to the same link."""
        out = {}
        for ln in self.links:
            out[(ln.a, ln.b)] = ln
            out[(ln.b, ln.a)] = ln
        return out

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, set[int]] = {n.id: set() for n in self.nodes}
        for ln in self.links:
            adj.setdefault(ln.a, set()).add(ln.b)
            adj.setdefault(ln.b, set()).add(ln.a)
        return {k: tuple(sorted(v)) for k, v in adj.items()}

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.node))
        for ln in self.links:
            g.add_edge(ln.a, ln.b, hops=1, power=ln.power_per_kbps)
        return g

    @cached_property
    def node_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.node))

    # per-instance scratch cache for path enumeration (not part of the value)
    @cached_property
    def _path_cache(self) -> dict:
        return {}

    def __getstate__(self):
        # drop cached artefacts when pickling for worker processes
        state = dict(self.__dict__)
        for key in ("node", "link", "neighbors", "graph", "node_ids", "_path_cache"):
            state.pop(key, None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)


@dataclass(frozen=True)
class VirtualNode:
    id: int
    function: int
    zone: int | str  # zone id or ANY
    mcu_mhz: float
    ram_kb: float = 0.0
    role: str = ""

    def zone_ok(self, zone: int) -> bool:
        return self.zone == ANY or self.zone == zone


@dataclass(frozen=True)
class VirtualLink:
    a: int
    b: int
    kbps: float


@dataclass(frozen=True)
class BusinessProcess:
    id: int
    vnodes: tuple[VirtualNode, ...]
    vlinks: tuple[VirtualLink, ...]

    @cached_property
    def vnode(self) -> dict[int, VirtualNode]:
        return {v.id: v for v in self.vnodes}

    @property
    def controller(self) -> VirtualNode:
        for v in self.vnodes:
            if v.role == "controller":
                return v
        # chains without role tags: the middle vnode plays the controller
        return self.vnodes[len(self.vnodes) // 2]

    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("vnode", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)


def euclid(a: IoTNode, b: IoTNode) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def validate_instance(network: PhysicalNetwork, bps: Iterable[BusinessProcess]) -> list[str]:
    """Return a description of every broken type invariant, sorted by entity.

    An empty list means the instance is well formed. Violations are data:
    this never raises for a malformed instance.
    """
    found: list[tuple[tuple, str]] = []

    def add(kind_rank: int, ident, msg: str):
        found.append(((kind_rank, ident, msg), msg))

    width, height = network.area
    zones = set(network.zones)
    funcs = set(network.functions)
    ids = [n.id for n in network.nodes]
    if len(set(ids)) != len(ids):
        add(0, -1, "network: duplicate node ids")
    for n in network.nodes:
        tag = f"node {n.id}"
        if not n.mcu_mhz > 0:
            add(1, n.id, f"{tag}: mcu_capacity must be > 0 (got {n.mcu_mhz})")
        if not n.ram_kb > 0:
            add(1, n.id, f"{tag}: ram_capacity must be > 0 (got {n.ram_kb})")
        if not n.capacity_kbps > 0:
            add(1, n.id, f"{tag}: link_capacity must be > 0 (got {n.capacity_kbps})")
        if not 0 <= n.idle_cpu_mw <= n.max_cpu_mw:
            add(1, n.id, f"{tag}: need 0 <= idle_cpu_power <= max_cpu_power")
        if not (0 <= n.x <= width and 0 <= n.y <= height):
            add(1, n.id, f"{tag}: position ({n.x}, {n.y}) outside area {width}x{height}")
        if n.zone not in zones:
            add(1, n.id, f"{tag}: unknown zone {n.zone}")
        extra = set(n.functions) - funcs
        if extra:
            add(1, n.id, f"{tag}: unknown functions {sorted(extra)}")

    seen_pairs = set()
    for ln in network.links:
        tag = f"link {ln.a}-{ln.b}"
        key = (ln.a, ln.b)
        if ln.a == ln.b:
            add(2, key, f"{tag}: endpoints must be distinct")
        if key in seen_pairs:
            add(2, key, f"{tag}: duplicate link")
        seen_pairs.add(key)
        if ln.e_pbt < 0 or ln.f_tr < 0:
            add(2, key, f"{tag}: energy coefficients must be >= 0")
        if ln.a not in network.node or ln.b not in network.node:
            add(2, key, f"{tag}: endpoint not a declared node")
            continue
        d = euclid(network.node[ln.a], network.node[ln.b])
        if not math.isclose(ln.dist_m, d, rel_tol=1e-9, abs_tol=1e-9):
            add(2, key, f"{tag}: distance {ln.dist_m} m disagrees with positions ({d:.6g} m)")

    if network.nodes and not _connected(network):
        add(0, -1, "network: graph is not connected")

    for bp in bps:
        tag = f"bp {bp.id}"
        vids = [v.id for v in bp.vnodes]
        if len(set(vids)) != len(vids):
            add(3, (bp.id, -1), f"{tag}: duplicate vnode ids")
        for v in bp.vnodes:
            if not v.mcu_mhz > 0:
                add(3, (bp.id, v.id), f"{tag} vnode {v.id}: mcu_demand must be > 0")
            if v.ram_kb < 0:
                add(3, (bp.id, v.id), f"{tag} vnode {v.id}: ram_demand must be >= 0")
            if v.function not in funcs:
                add(3, (bp.id, v.id), f"{tag} vnode {v.id}: unknown function {v.function}")
            if v.zone != ANY and v.zone not in zones:
                add(3, (bp.id, v.id), f"{tag} vnode {v.id}: unknown zone {v.zone}")
        for k, vl in enumerate(bp.vlinks):
            if vl.a not in vids or vl.b not in vids:
                add(4, (bp.id, k), f"{tag} vlink {k}: dangling endpoint ({vl.a}, {vl.b})")
            elif vl.a == vl.b:
                add(4, (bp.id, k), f"{tag} vlink {k}: endpoints must be distinct")
            if not vl.kbps > 0:
                add(4, (bp.id, k), f"{tag} vlink {k}: traffic must be > 0")

    found.sort(key=lambda t: _sortable(t[0]))
    return [msg for _, msg in found]


def _sortable(key):
    rank, ident, msg = key
    if not isinstance(ident, tuple):
        ident = (ident,)
    return (rank, ident, msg)


def _connected(network: PhysicalNetwork) -> bool:
    nbrs = network.neighbors
    start = network.nodes[0].id
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in nbrs.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(network.node)

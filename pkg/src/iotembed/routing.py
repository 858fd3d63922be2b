"""Single-path routing between host nodes and per-link load aggregation."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

import networkx as nx

from .metrics import table_for
from .model import BusinessProcess, PhysicalNetwork

Path = tuple[int, ...]
DemandId = tuple[int, int]  # (bp id, vlink index)

_EPS = 1e-9


class WeightMode(str, Enum):
    HOPS = "hops"
    LINK_POWER = "link_power"


class NoRouteError(RuntimeError):
    pass


class BlockingError(RuntimeError):
    def __init__(self, demand: DemandId, msg: str = ""):
        super().__init__(msg or f"demand {demand} cannot be routed")
        self.demand = demand


def path_links(path: Path) -> list[tuple[int, int]]:
    return list(zip(path, path[1:]))


def edge_weight(network: PhysicalNetwork, e: int, f: int, mode: WeightMode) -> float:
    if mode == WeightMode.HOPS:
        return 1.0
    return network.link[(e, f)].power_per_kbps


def path_weight(network: PhysicalNetwork, path: Path, mode: WeightMode) -> float:
    w = 0.0
    for e, f in path_links(path):
        w += edge_weight(network, e, f, mode)
    return w


def is_simple_path(network: PhysicalNetwork, path: Path) -> bool:
    if len(set(path)) != len(path):
        return False
    return all((e, f) in network.link for e, f in path_links(path))


def shortest_path(network: PhysicalNetwork, src: int, dst: int, weight_mode: WeightMode = WeightMode.HOPS,
                  residual: Mapping[int, float] | None = None, demand: float = 0.0,
                  arrival_room: Mapping[int, float] | None = None) -> Path:
    """Minimum-weight simple path whose senders all have ``residual >= demand``.

    ``residual`` bounds each node's further outgoing traffic; ``arrival_room``
    (optional) bounds each node's further incoming traffic. Ties go to the
    lexicographically smallest node sequence.
    """
    if src not in network.node or dst not in network.node:
        raise KeyError(f"unknown endpoint {src} or {dst}")
    if src == dst:
        return (src,)

    def can_send(u):
        return residual is None or residual.get(u, 0.0) >= demand - _EPS

    def can_receive(u):
        return arrival_room is None or arrival_room.get(u, 0.0) >= demand - _EPS

    if not can_send(src):
        raise NoRouteError(f"no admissible route {src}->{dst} for {demand:g} kbps")
    heap: list[tuple[float, Path]] = [(0.0, (src,))]
    done = set()
    nbrs = network.neighbors
    while heap:
        cost, path = heapq.heappop(heap)
        u = path[-1]
        if u in done:
            continue
        done.add(u)
        if u == dst:
            return path
        for v in nbrs[u]:
            if v in done or not can_receive(v):
                continue
            if v != dst and not can_send(v):
                continue
            heapq.heappush(heap, (cost + edge_weight(network, u, v, weight_mode), path + (v,)))
    raise NoRouteError(f"no admissible route {src}->{dst} for {demand:g} kbps")


def k_shortest_paths(network: PhysicalNetwork, src: int, dst: int, k: float,
                     weight_mode: WeightMode = WeightMode.HOPS) -> list[Path]:
    """The ``k`` lightest loopless paths, ordered by (weight, node sequence).

    ``k`` may be ``math.inf`` to list every simple path.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    key = (src, dst, k, weight_mode)
    cache = network._path_cache
    if key in cache:
        return list(cache[key])
    if src == dst:
        out = [(src,)]
    else:
        out = _k_shortest(network, src, dst, k, weight_mode)
    cache[key] = tuple(out)
    return list(out)


def _k_shortest(network, src, dst, k, mode) -> list[Path]:
    attr = "hops" if mode == WeightMode.HOPS else "power"
    found: list[tuple[float, Path]] = []
    kth = None
    try:
        gen = nx.shortest_simple_paths(network.graph, src, dst, weight=attr)
        for p in gen:
            p = tuple(p)
            w = path_weight(network, p, mode)
            if kth is not None and w > kth + 1e-9 * max(1.0, abs(kth)):
                break
            found.append((w, p))
            if kth is None and len(found) >= k:
                # keep collecting paths tied with the k-th so ties sort lexicographically
                kth = max(x[0] for x in found)
    except nx.NetworkXNoPath:
        return []
    found.sort()
    out = [p for _, p in found]
    return out if k == math.inf else out[: int(k)]


def count_simple_paths_exceeds(network: PhysicalNetwork, src: int, dst: int, k: int) -> bool:
    return len(k_shortest_paths(network, src, dst, k + 1, WeightMode.HOPS)) > k


@dataclass(frozen=True)
class RoutingPlan:
    paths: Mapping[DemandId, Path] = field(default_factory=dict)
    link_loads: Mapping[tuple[int, int], float] = field(default_factory=dict)
    demand_matrix: Mapping[tuple[int, int], float] = field(default_factory=dict)


def demands_of(bps: Iterable[BusinessProcess], assignment) -> list[tuple[DemandId, int, int, float]]:
    """(demand id, source host, destination host, kbps) for every embedded vlink, in id order."""
    out = []
    for bp in sorted(bps, key=lambda b: b.id):
        if (bp.id, bp.vnodes[0].id) not in assignment:
            continue
        for k, vl in enumerate(bp.vlinks):
            out.append(((bp.id, k), assignment[(bp.id, vl.a)], assignment[(bp.id, vl.b)], vl.kbps))
    return out


def plan_from_paths(bps: Iterable[BusinessProcess], assignment, paths: Mapping[DemandId, Path]) -> RoutingPlan:
    """Aggregate per-demand paths into link loads and the host-pair demand matrix.

    Demands whose endpoints share a host keep an empty path and add no load.
    """
    loads: dict[tuple[int, int], list[float]] = {}
    matrix: dict[tuple[int, int], list[float]] = {}
    full_paths = {}
    for did, c, d, kbps in demands_of(bps, assignment):
        if c == d:
            full_paths[did] = ()
            continue
        p = tuple(paths[did])
        full_paths[did] = p
        matrix.setdefault((c, d), []).append(kbps)
        for ef in path_links(p):
            loads.setdefault(ef, []).append(kbps)
    return RoutingPlan(
        paths=dict(sorted(full_paths.items())),
        link_loads={ef: math.fsum(v) for ef, v in sorted(loads.items())},
        demand_matrix={cd: math.fsum(v) for cd, v in sorted(matrix.items())},
    )


class Residuals:
    """Remaining outgoing (send) and incoming (receive) capacity per node."""

    def __init__(self, network: PhysicalNetwork, base: RoutingPlan | None = None):
        self.network = network
        self.max_arrival = table_for(network.coefficients).max_rate
        self.out_used = {n: 0.0 for n in network.node_ids}
        self.in_used = {n: 0.0 for n in network.node_ids}
        if base is not None:
            for (e, f), load in base.link_loads.items():
                self.out_used[e] += load
                self.in_used[f] += load

    def send_room(self, cap_fraction: float = 1.0) -> dict[int, float]:
        node = self.network.node
        return {n: cap_fraction * node[n].capacity_kbps - u for n, u in self.out_used.items()}

    def receive_room(self) -> dict[int, float]:
        return {n: self.max_arrival - u for n, u in self.in_used.items()}

    def admits(self, path: Path, demand: float, cap_fraction: float = 1.0) -> bool:
        node = self.network.node
        for u in path[:-1]:
            if self.out_used[u] + demand > cap_fraction * node[u].capacity_kbps + _EPS:
                return False
        for u in path[1:]:
            if self.in_used[u] + demand > self.max_arrival + _EPS:
                return False
        return True

    def commit(self, path: Path, demand: float, sign: float = 1.0):
        for u in path[:-1]:
            self.out_used[u] += sign * demand
        for u in path[1:]:
            self.in_used[u] += sign * demand

    def route(self, src: int, dst: int, demand: float, mode: WeightMode, cap_fraction: float = 1.0) -> Path:
        return shortest_path(self.network, src, dst, mode, self.send_room(cap_fraction), demand,
                             self.receive_room())


def route_demands(residuals: Residuals, demands, mode: WeightMode, node_util_cap: float = 1.0) -> dict[DemandId, Path]:
    """Route demands one by one, committing each path to ``residuals``.

    A demand with no path under ``node_util_cap`` is retried once at full
    capacity. On failure every commit made here is rolled back.
    """
    routed: dict[DemandId, Path] = {}
    committed = []
    for did, c, d, kbps in demands:
        if c == d:
            routed[did] = ()
            continue
        try:
            try:
                p = residuals.route(c, d, kbps, mode, node_util_cap)
            except NoRouteError:
                if node_util_cap >= 1.0:
                    raise
                p = residuals.route(c, d, kbps, mode, 1.0)
        except NoRouteError as exc:
            for q, w in reversed(committed):
                residuals.commit(q, w, -1.0)
            raise BlockingError(did, str(exc)) from None
        residuals.commit(p, kbps)
        committed.append((p, kbps))
        routed[did] = p
    return routed


def route_all(network: PhysicalNetwork, bps: Iterable[BusinessProcess], assignment,
              weight_mode: WeightMode = WeightMode.HOPS, node_util_cap: float = 1.0) -> RoutingPlan:
    """Greedily route every embedded demand in (BP id, vlink id) order."""
    bps = list(bps)
    residuals = Residuals(network)
    paths = route_demands(residuals, demands_of(bps, assignment), weight_mode, node_util_cap)
    return plan_from_paths(bps, assignment, paths)


def all_simple_paths(network: PhysicalNetwork, src: int, dst: int) -> list[Path]:
    """Every simple path, unordered weights; used by the brute-force oracle."""
    if src == dst:
        return [(src,)]
    return sorted(tuple(p) for p in nx.all_simple_paths(network.graph, src, dst))


def flow_balance(path: Path, kbps: float) -> dict[int, float]:
    """Net outflow per node for one demand routed on ``path``."""
    bal: dict[int, float] = {}
    for e, f in path_links(path):
        bal[e] = bal.get(e, 0.0) + kbps
        bal[f] = bal.get(f, 0.0) - kbps
    return bal


__all__ = [
    "WeightMode", "NoRouteError", "BlockingError", "RoutingPlan", "Residuals",
    "shortest_path", "k_shortest_paths", "route_all", "route_demands", "plan_from_paths",
    "demands_of", "path_weight", "path_links", "is_simple_path", "all_simple_paths", "flow_balance",
]

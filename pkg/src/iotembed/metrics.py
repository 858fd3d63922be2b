"""Analytic evaluation of an embedding: processing power, network power,
M/M/1 lookup-table latency and the combined objectives.

All sums use ``math.fsum`` so a value never depends on summation order;
re-evaluating a stored solution reproduces its numbers bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .model import BusinessProcess, Coefficients, PhysicalNetwork

Assignment = Mapping[tuple[int, int], int]  # (bp id, vnode id) -> IoT node id
LinkLoads = Mapping[tuple[int, int], float]  # directed (e, f) -> kbps


class SaturationError(ValueError):
    """A node's arrival rate reached its service rate (utilisation >= 1)."""

    def __init__(self, node, arrival, limit):
        super().__init__(f"node {node}: arrival {arrival:g} kbps exceeds the largest "
                         f"tabulated rate {limit:g} kbps (M/M/1 queue saturated)")
        self.node = node
        self.arrival = arrival


class BaselineError(ValueError):
    pass


@dataclass(frozen=True)
class LatencyTable:
    """Mean M/M/1 latency W_j (ms) tabulated on an arrival-rate grid j (kbps)."""

    service_rate: float  # packets/s
    step: float
    packet_kb: float
    entries: tuple[tuple[float, float], ...]

    @property
    def max_rate(self) -> float:
        return self.entries[-1][0]

    def lookup(self, arrival: float) -> float:
        """Latency in ms, rounding the arrival rate up to the next grid point.

        Zero arrival costs nothing (the all-zero indicator case).
        """
        if arrival <= 0:
            return 0.0
        if arrival > self.max_rate:
            raise SaturationError(None, arrival, self.max_rate)
        k = math.ceil(arrival / self.step)
        if k * self.step < arrival:
            k += 1
        return self.entries[k - 1][1]


def build_latency_table(link_capacity: float, packet_size: float = 1.0, step: float = 10.0) -> LatencyTable:
    if step <= 0 or step >= link_capacity:
        raise ValueError(f"invalid table step {step} for capacity {link_capacity}")
    n = link_capacity / step
    if abs(n - round(n)) > 1e-9:
        raise ValueError(f"table step {step} does not divide capacity {link_capacity}")
    n = int(round(n))
    mu = link_capacity / packet_size
    entries = []
    for k in range(1, n):
        j = k * step
        entries.append((j, 1000.0 / (mu - j / packet_size)))
    return LatencyTable(service_rate=mu, step=step, packet_kb=packet_size, entries=tuple(entries))


def table_for(coeffs: Coefficients) -> LatencyTable:
    return build_latency_table(coeffs.capacity, coeffs.packet_kb, coeffs.table_step)


@dataclass(frozen=True)
class MetricsReport:
    tpp: float = 0.0
    tnp: float = 0.0
    tl: float = 0.0
    per_node_arrival: Mapping[int, float] = field(default_factory=dict)
    per_node_latency: Mapping[int, float] = field(default_factory=dict)
    active_cpu: frozenset[int] = frozenset()
    active_net: frozenset[int] = frozenset()

    @property
    def power(self) -> float:
        return math.fsum((self.tnp, self.tpp))

    @property
    def avg_latency(self) -> float:
        """TL divided by the number of nodes that receive traffic."""
        busy = sum(1 for a in self.per_node_arrival.values() if a > 0)
        return self.tl / busy if busy else 0.0


def _vnode_index(bps: Iterable[BusinessProcess]):
    return {(bp.id, v.id): v for bp in bps for v in bp.vnodes}


def processing_power(network: PhysicalNetwork, assignment: Assignment,
                     bps: Iterable[BusinessProcess]) -> tuple[float, frozenset[int]]:
    vmap = _vnode_index(bps)
    terms = []
    active = set()
    for key, c in assignment.items():
        node = network.node[c]
        active.add(c)
        # linear load profile between idle and max power
        terms.append(node.max_cpu_mw * (vmap[key].mcu_mhz / node.mcu_mhz))
    terms.extend(network.node[c].idle_cpu_mw for c in active)
    return math.fsum(terms), frozenset(active)


def network_power(network: PhysicalNetwork, link_loads: LinkLoads) -> tuple[float, frozenset[int]]:
    terms = []
    active = set()
    for (e, f), load in link_loads.items():
        if load <= 0:
            continue
        ln = network.link[(e, f)]
        active.update((e, f))
        terms.append(2 * load * ln.e_pbt)
        terms.append(load * (ln.dist_m**2 * ln.f_tr))
    terms.extend(network.node[e].idle_net_mw for e in active)
    return math.fsum(terms), frozenset(active)


def arrivals_from_loads(network: PhysicalNetwork, link_loads: LinkLoads) -> dict[int, float]:
    incoming: dict[int, list[float]] = {n: [] for n in network.node_ids}
    for (_, f), load in link_loads.items():
        incoming[f].append(load)
    return {n: math.fsum(v) for n, v in incoming.items()}


def node_arrival_rates(network: PhysicalNetwork, routing) -> dict[int, float]:
    """Arrival rate per node: the summed load of its incoming directed links."""
    return arrivals_from_loads(network, routing.link_loads)


def latencies(arrival: Mapping[int, float], table: LatencyTable) -> dict[int, float]:
    out = {}
    for f in sorted(arrival):
        try:
            out[f] = table.lookup(arrival[f])
        except SaturationError:
            raise SaturationError(f, arrival[f], table.max_rate) from None
    return out


def total_latency(network: PhysicalNetwork, routing, table: LatencyTable) -> tuple[float, dict[int, float]]:
    per_node = latencies(node_arrival_rates(network, routing), table)
    return math.fsum(per_node.values()), per_node


def evaluate(network: PhysicalNetwork, bps: Iterable[BusinessProcess], assignment: Assignment,
             routing, table: LatencyTable | None = None) -> MetricsReport:
    table = table or table_for(network.coefficients)
    tpp, active_cpu = processing_power(network, assignment, bps)
    tnp, active_net = network_power(network, routing.link_loads)
    arrival = node_arrival_rates(network, routing)
    per_node = latencies(arrival, table)
    return MetricsReport(
        tpp=tpp, tnp=tnp, tl=math.fsum(per_node.values()),
        per_node_arrival=arrival, per_node_latency=per_node,
        active_cpu=active_cpu, active_net=active_net,
    )


def weighted_objective(report: MetricsReport, alpha: float, beta: float, gamma: float) -> float:
    return math.fsum((alpha * report.tl, beta * report.tnp, gamma * report.tpp))


def optimality_ratio(multi_value: float, single_value: float) -> float:
    """Improvement of the multi-objective optimum relative to the single-objective one."""
    if not single_value > 0:
        raise BaselineError(f"single-objective improvement must be positive, got {single_value}")
    return multi_value / single_value

"""Constraint checks for candidate embeddings.

``check_assignment`` covers placement (uniqueness, coexistence, MCU/RAM
capacity, function, zone); ``check_routing`` covers the link embedding
(path endpoints, flow conservation, no splitting, per-node capacity).
Both return violations as data and never raise on a bad solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .model import BusinessProcess, PhysicalNetwork, ZoneMode
from .routing import RoutingPlan, flow_balance, path_links


class Constraint(str, Enum):
    NODE_UNIQUE = "NODE_UNIQUE"
    COEXIST = "COEXIST"
    MCU_CAP = "MCU_CAP"
    RAM_CAP = "RAM_CAP"
    FUNC = "FUNC"
    ZONE = "ZONE"
    FLOW = "FLOW"
    SPLIT = "SPLIT"
    LINK_CAP = "LINK_CAP"
    PATH_ENDPOINT = "PATH_ENDPOINT"


@dataclass(frozen=True)
class EmbeddingOptions:
    coexistence: bool = False
    zone_mode: ZoneMode = ZoneMode.SAME_ZONE


@dataclass(frozen=True)
class Violation:
    constraint: Constraint
    entities: tuple
    measured: float | str | None = None
    allowed: float | str | None = None

    def __str__(self):
        ents = " ".join(str(e) for e in self.entities)
        return f"{self.constraint.value} {ents} measured={self.measured} allowed={self.allowed}"


def _sorted(violations: list[Violation]) -> list[Violation]:
    return sorted(violations, key=lambda v: (v.constraint.value, repr(v.entities)))


def check_assignment(network: PhysicalNetwork, bps: Iterable[BusinessProcess], assignment,
                     options: EmbeddingOptions = EmbeddingOptions()) -> list[Violation]:
    bps = list(bps)
    out: list[Violation] = []
    known = {(bp.id, v.id) for bp in bps for v in bp.vnodes}
    for key in assignment:
        if key not in known:
            out.append(Violation(Constraint.NODE_UNIQUE, key, "unknown vnode", None))

    mcu: dict[int, list[float]] = {}
    ram: dict[int, list[float]] = {}
    for bp in bps:
        hosted: dict[int, list[int]] = {}
        for v in bp.vnodes:
            c = assignment.get((bp.id, v.id))
            if c is None or c not in network.node:
                out.append(Violation(Constraint.NODE_UNIQUE, (bp.id, v.id), c, "one IoT node"))
                continue
            node = network.node[c]
            hosted.setdefault(c, []).append(v.id)
            mcu.setdefault(c, []).append(v.mcu_mhz)
            ram.setdefault(c, []).append(v.ram_kb)
            if v.function not in node.functions:
                out.append(Violation(Constraint.FUNC, (bp.id, v.id, c), v.function, sorted(node.functions)))
            if not v.zone_ok(node.zone):
                out.append(Violation(Constraint.ZONE, (bp.id, v.id, c), node.zone, v.zone))
        if options.coexistence:
            for c, vids in sorted(hosted.items()):
                if len(vids) > 1:
                    out.append(Violation(Constraint.COEXIST, (bp.id, c) + tuple(vids), len(vids), 1))

    for c in sorted(mcu):
        node = network.node[c]
        used = math.fsum(mcu[c])
        if used > node.mcu_mhz + 1e-9:
            out.append(Violation(Constraint.MCU_CAP, (c,), used, node.mcu_mhz))
        used = math.fsum(ram[c])
        if used > node.ram_kb + 1e-9:
            out.append(Violation(Constraint.RAM_CAP, (c,), used, node.ram_kb))
    return _sorted(out)


def _demands(network, bps, assignment):
    # demands with an unplaced endpoint are NODE_UNIQUE's business, not routing's
    for bp in sorted(bps, key=lambda b: b.id):
        for k, vl in enumerate(bp.vlinks):
            c, d = assignment.get((bp.id, vl.a)), assignment.get((bp.id, vl.b))
            if c in network.node and d in network.node:
                yield (bp.id, k), c, d, vl.kbps


def check_routing(network: PhysicalNetwork, bps: Iterable[BusinessProcess], assignment,
                  routing: RoutingPlan) -> list[Violation]:
    bps = list(bps)
    out: list[Violation] = []
    loads: dict[tuple[int, int], list[float]] = {}
    for did, c, d, kbps in _demands(network, bps, assignment):
        path = tuple(routing.paths.get(did, ()))
        if c == d:
            if len(path) > 1:
                out.append(Violation(Constraint.PATH_ENDPOINT, did, repr(path), "empty path"))
            continue
        if len(path) < 2 or path[0] != c or path[-1] != d:
            out.append(Violation(Constraint.PATH_ENDPOINT, did, repr(path), f"{c}->{d}"))
            # its load still counts, so the load totals below are judged on their own
            if all(ef in network.link for ef in path_links(path)):
                for ef in path_links(path):
                    loads.setdefault(ef, []).append(kbps)
            continue
        if len(set(path)) != len(path):
            # a revisited node sends this demand on more than one link
            out.append(Violation(Constraint.SPLIT, did, repr(path), "simple path"))
        bad = [ef for ef in path_links(path) if ef not in network.link]
        if bad:
            out.append(Violation(Constraint.FLOW, did, f"undeclared links {bad}", "physical links only"))
            continue
        # flow conservation: +traffic at source host, -traffic at destination, 0 elsewhere
        bal = flow_balance(path, kbps)
        expected = {c: kbps, d: -kbps}
        for n in sorted(set(bal) | set(expected)):
            if abs(bal.get(n, 0.0) - expected.get(n, 0.0)) > 1e-9:
                out.append(Violation(Constraint.FLOW, did + (n,), bal.get(n, 0.0), expected.get(n, 0.0)))
        for ef in path_links(path):
            loads.setdefault(ef, []).append(kbps)

    recomputed = {ef: math.fsum(v) for ef, v in loads.items()}
    for ef in sorted(set(recomputed) | set(routing.link_loads)):
        want = recomputed.get(ef, 0.0)
        have = routing.link_loads.get(ef, 0.0)
        if abs(want - have) > 1e-9:
            out.append(Violation(Constraint.FLOW, ef, have, want))

    sent: dict[int, float] = {}
    for (e, _), load in routing.link_loads.items():
        sent[e] = sent.get(e, 0.0) + load
    for e in sorted(sent):
        if e in network.node and sent[e] > network.node[e].capacity_kbps + 1e-9:
            out.append(Violation(Constraint.LINK_CAP, (e,), sent[e], network.node[e].capacity_kbps))
    return _sorted(out)


def check_solution(network: PhysicalNetwork, bps: Iterable[BusinessProcess], assignment,
                   routing: RoutingPlan, options: EmbeddingOptions = EmbeddingOptions()) -> list[Violation]:
    """Both checks over the BPs that are actually embedded."""
    embedded = [bp for bp in bps if any((bp.id, v.id) in assignment for v in bp.vnodes)]
    return check_assignment(network, embedded, assignment, options) + \
        check_routing(network, embedded, assignment, routing)

"""Real-time embedding heuristics and the energy/latency-unaware baseline.

* ``embed_eluse`` -- random feasible placement and random short routes.
* ``embed_rese``  -- first-fit onto the most MHz-per-mW efficient nodes,
  power-weighted shortest-path routing.
* ``embed_rlse``  -- RESE placement, hop-count routing that keeps every
  node's outgoing load under a utilisation threshold where possible.

All three work BP by BP: a BP that cannot be placed or routed is recorded
as blocked and leaves no trace in the residual state.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .feasibility import EmbeddingOptions
from .model import BusinessProcess, PhysicalNetwork
from .routing import BlockingError, Residuals, WeightMode, demands_of, k_shortest_paths, route_demands
from .solver import ENERGY, Certificate, Frozen, Objective, Solution, build_solution

ELUSE_K = 8
ELUSE_ATTEMPTS = 20


class _Placement:
    """Residual MCU/RAM per node plus committed assignments."""

    def __init__(self, network: PhysicalNetwork, frozen: Frozen):
        self.net = network
        self.mcu = {n.id: n.mcu_mhz for n in network.nodes}
        self.ram = {n.id: n.ram_kb for n in network.nodes}
        vmap = {(b.id, v.id): v for b in frozen.bps for v in b.vnodes}
        for key, c in frozen.assignment.items():
            self.mcu[c] -= vmap[key].mcu_mhz
            self.ram[c] -= vmap[key].ram_kb
        self.assignment = dict(frozen.assignment)

    def fits(self, v, c: int, used_by_bp: set[int], options: EmbeddingOptions) -> bool:
        node = self.net.node[c]
        if v.function not in node.functions or not v.zone_ok(node.zone):
            return False
        if options.coexistence and c in used_by_bp:
            return False
        return self.mcu[c] >= v.mcu_mhz - 1e-9 and self.ram[c] >= v.ram_kb - 1e-9

    def place(self, bp: BusinessProcess, v, c: int, sign: int = 1):
        self.mcu[c] -= sign * v.mcu_mhz
        self.ram[c] -= sign * v.ram_kb
        if sign > 0:
            self.assignment[(bp.id, v.id)] = c
        else:
            del self.assignment[(bp.id, v.id)]


def efficiency_order(network: PhysicalNetwork) -> list[int]:
    """Node ids by processing efficiency (MHz per mW), best first, lower id on ties."""
    return [n.id for n in sorted(network.nodes, key=lambda n: (-n.efficiency, n.id))]


def _greedy_place(pl: _Placement, bp: BusinessProcess, order: list[int], options: EmbeddingOptions) -> bool:
    used: set[int] = set()
    done = []
    for v in bp.vnodes:
        host = next((c for c in order if pl.fits(v, c, used, options)), None)
        if host is None:
            for w, c in reversed(done):
                pl.place(bp, w, c, -1)
            return False
        pl.place(bp, v, host)
        used.add(host)
        done.append((v, host))
    return True


def _unplace(pl: _Placement, bp: BusinessProcess):
    for v in bp.vnodes:
        c = pl.assignment.get((bp.id, v.id))
        if c is not None:
            pl.place(bp, v, c, -1)


def _finish(network, frozen: Frozen, bps, pl: _Placement, paths, blocked, objective) -> Solution:
    all_paths = dict(frozen.routing.paths)
    all_paths.update(paths)
    return build_solution(network, list(frozen.bps) + list(bps), pl.assignment, all_paths, objective,
                          Certificate.BEST_FOUND, blocked)


def _consolidating(network, bps, options, objective, frozen, mode, threshold) -> Solution:
    frozen = frozen or Frozen()
    pl = _Placement(network, frozen)
    res = Residuals(network, frozen.routing)
    order = efficiency_order(network)
    paths: dict = {}
    blocked = []
    for bp in sorted(bps, key=lambda b: (b.controller.mcu_mhz, b.id)):
        if not _greedy_place(pl, bp, order, options):
            blocked.append(bp.id)
            continue
        try:
            paths.update(route_demands(res, demands_of([bp], pl.assignment), mode, threshold))
        except BlockingError:
            _unplace(pl, bp)
            blocked.append(bp.id)
    return _finish(network, frozen, bps, pl, paths, blocked, objective)


def embed_rese(network: PhysicalNetwork, bps: Sequence[BusinessProcess],
               options: EmbeddingOptions = EmbeddingOptions(), objective: Objective = ENERGY,
               frozen: Frozen | None = None) -> Solution:
    """Consolidate BPs, cheapest controller first, onto the most efficient nodes."""
    return _consolidating(network, bps, options, objective, frozen, WeightMode.LINK_POWER, 1.0)


def embed_rlse(network: PhysicalNetwork, bps: Sequence[BusinessProcess],
               options: EmbeddingOptions = EmbeddingOptions(), threshold: float = 0.6,
               objective: Objective = ENERGY, frozen: Frozen | None = None) -> Solution:
    """RESE placement; hop-count routes under a node-utilisation cap.

    A demand that cannot be routed under ``threshold`` of node capacity is
    retried at full capacity before its BP is blocked.
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    return _consolidating(network, bps, options, objective, frozen, WeightMode.HOPS, threshold)


def embed_eluse(network: PhysicalNetwork, bps: Sequence[BusinessProcess],
                options: EmbeddingOptions = EmbeddingOptions(), seed: int = 0,
                objective: Objective = ENERGY, frozen: Frozen | None = None,
                attempts: int = ELUSE_ATTEMPTS) -> Solution:
    """Feasibility-only baseline: uniform random hosts and random short routes.

    Each BP gets up to ``attempts`` random placements; routes are drawn among
    the ``ELUSE_K`` shortest hop-count paths that still fit.
    """
    frozen = frozen or Frozen()
    rng = np.random.default_rng([int(seed), 7])
    pl = _Placement(network, frozen)
    res = Residuals(network, frozen.routing)
    ids = network.node_ids
    paths: dict = {}
    blocked = []
    for bp in bps:
        ok = False
        for _ in range(attempts):
            used: set[int] = set()
            placed = True
            for v in bp.vnodes:
                hosts = [c for c in ids if pl.fits(v, c, used, options)]
                if not hosts:
                    placed = False
                    break
                c = hosts[int(rng.integers(len(hosts)))]
                pl.place(bp, v, c)
                used.add(c)
            if not placed:
                _unplace(pl, bp)
                break  # capacity only shrinks on retries of the same BP: give up
            routed = {}
            committed = []
            for did, c, d, kbps in demands_of([bp], pl.assignment):
                if c == d:
                    routed[did] = ()
                    continue
                cands = [p for p in k_shortest_paths(network, c, d, ELUSE_K, WeightMode.HOPS)
                         if res.admits(p, kbps)]
                if not cands:
                    break
                p = cands[int(rng.integers(len(cands)))]
                res.commit(p, kbps)
                committed.append((p, kbps))
                routed[did] = p
            else:
                paths.update(routed)
                ok = True
                break
            for p, kbps in committed:
                res.commit(p, kbps, -1.0)
            _unplace(pl, bp)
        if not ok:
            blocked.append(bp.id)
    return _finish(network, frozen, bps, pl, paths, blocked, objective)

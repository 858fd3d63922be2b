"""Exact embedding by branch and bound, and an exhaustive oracle to check it.

The search branches vnode by vnode over hosts that satisfy the function and
zone requirements, then picks one candidate path per inter-host demand.
Candidates compare on the key

    (blocked BP count, objective, secondary metric, host vector, path vector)

so the answer is unique and independent of search order or worker count.
The secondary metric is TL for the energy objective and total power for the
latency objective; it only separates exact objective ties.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .feasibility import EmbeddingOptions, check_assignment, check_routing
from .metrics import MetricsReport, SaturationError, evaluate, table_for, weighted_objective
from .model import BusinessProcess, PhysicalNetwork
from .routing import (RoutingPlan, WeightMode, all_simple_paths, k_shortest_paths, path_links,
                      plan_from_paths, shortest_path, NoRouteError)


class ObjectiveKind(str, Enum):
    ENERGY = "energy"
    LATENCY = "latency"
    WEIGHTED = "weighted"


@dataclass(frozen=True)
class Objective:
    kind: ObjectiveKind = ObjectiveKind.ENERGY
    alpha: float = 30.0
    beta: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ObjectiveKind(self.kind))
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("objective weights must be non-negative")

    def value(self, report: MetricsReport) -> float:
        if self.kind == ObjectiveKind.ENERGY:
            return report.power
        if self.kind == ObjectiveKind.LATENCY:
            return report.tl
        return weighted_objective(report, self.alpha, self.beta, self.gamma)

    def secondary(self, report: MetricsReport) -> float:
        if self.kind == ObjectiveKind.ENERGY:
            return report.tl
        if self.kind == ObjectiveKind.LATENCY:
            return report.power
        return 0.0


ENERGY = Objective(ObjectiveKind.ENERGY)
LATENCY = Objective(ObjectiveKind.LATENCY)
WEIGHTED = Objective(ObjectiveKind.WEIGHTED)


class Certificate(str, Enum):
    PROVED_OPTIMAL = "PROVED_OPTIMAL"
    BEST_FOUND = "BEST_FOUND"
    INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class Budget:
    k_paths: int | None = 8  # None: every simple path
    node_limit: int | None = 2_000_000  # per top-level subtree
    time_limit: float | None = None  # seconds; wall-clock limits are not reproducible


@dataclass(frozen=True)
class Solution:
    assignment: Mapping[tuple[int, int], int]
    routing: RoutingPlan
    metrics: MetricsReport
    objective: float
    certificate: Certificate
    blocked: tuple[int, ...] = ()

    @property
    def embedded(self) -> tuple[int, ...]:
        return tuple(sorted({bp for bp, _ in self.assignment}))


@dataclass(frozen=True)
class Frozen:
    """Embeddings that must be kept exactly as they are (sequential arrivals)."""

    bps: tuple[BusinessProcess, ...] = ()
    assignment: Mapping[tuple[int, int], int] = field(default_factory=dict)
    routing: RoutingPlan = field(default_factory=RoutingPlan)

    @classmethod
    def of(cls, solution: Solution | None, bps: Iterable[BusinessProcess]) -> "Frozen":
        if solution is None:
            return cls()
        keep = set(solution.embedded)
        return cls(tuple(b for b in bps if b.id in keep), dict(solution.assignment), solution.routing)


class OracleTooLarge(ValueError):
    pass


def build_solution(network: PhysicalNetwork, bps: Sequence[BusinessProcess], assignment, paths,
                   objective: Objective, certificate: Certificate, blocked=()) -> Solution:
    embedded = {bp for bp, _ in assignment}
    active = [b for b in bps if b.id in embedded]
    plan = plan_from_paths(active, assignment, paths)
    report = evaluate(network, active, assignment, plan)
    return Solution(dict(sorted(assignment.items())), plan, report, objective.value(report),
                    Certificate(certificate), tuple(sorted(blocked)))


def infeasible_solution(network, frozen: Frozen, bps, objective, certificate=Certificate.INFEASIBLE) -> Solution:
    base = build_solution(network, frozen.bps, frozen.assignment, frozen.routing.paths, objective, certificate)
    return Solution(base.assignment, base.routing, base.metrics, math.inf, Certificate(certificate),
                    tuple(sorted(b.id for b in bps)))


def _within_tol(lb: float, best: float) -> bool:
    """True when ``lb`` cannot beat ``best`` (bounds carry float slack)."""
    return lb > best + 1e-9 * max(1.0, abs(best))


class _Stop(Exception):
    pass


class _Search:
    """Depth-first branch and bound over hosts, then over candidate paths."""

    def __init__(self, network: PhysicalNetwork, bps, options: EmbeddingOptions, objective: Objective,
                 budget: Budget, frozen: Frozen, allow_blocking: bool):
        self.net = network
        self.bps = sorted(bps, key=lambda b: b.id)
        self.options = options
        self.obj = objective
        self.budget = budget
        self.frozen = frozen
        self.allow_blocking = allow_blocking
        self.all_bps = list(frozen.bps) + self.bps
        self.table = table_for(network.coefficients)
        self.max_arrival = self.table.max_rate
        self.mode = WeightMode.HOPS if objective.kind == ObjectiveKind.LATENCY else WeightMode.LINK_POWER
        self.k = math.inf if budget.k_paths is None else budget.k_paths
        ids = network.node_ids
        node = network.node

        self.mcu_used = {n: 0.0 for n in ids}
        self.ram_used = {n: 0.0 for n in ids}
        self.hosted = {n: 0 for n in ids}
        vmap = {(b.id, v.id): v for b in frozen.bps for v in b.vnodes}
        self.tpp_lb = 0.0
        for key, c in frozen.assignment.items():
            v = vmap[key]
            self._host(c, v, +1)

        # frozen traffic is fixed: it seeds the network-side bounds
        self.out_lb = {n: 0.0 for n in ids}
        self.in_lb = {n: 0.0 for n in ids}
        self.net_cnt = {n: 0 for n in ids}
        self.frozen_link_power = 0.0
        for (e, f), load in frozen.routing.link_loads.items():
            self.out_lb[e] += load
            self.in_lb[f] += load
            self.frozen_link_power += load * network.link[(e, f)].power_per_kbps
            if load > 0:
                self.net_cnt[e] += 1
                self.net_cnt[f] += 1
        self.idle_lb = sum(node[n].idle_net_mw for n in ids if self.net_cnt[n] > 0)
        self.link_lb = self.frozen_link_power

        # per-vnode host candidates (function, zone, stand-alone capacity)
        self.cands: dict[tuple[int, int], list[int]] = {}
        self.min_load: dict[tuple[int, int], float] = {}
        for bp in self.bps:
            for v in bp.vnodes:
                cs = [n.id for n in network.nodes
                      if v.function in n.functions and v.zone_ok(n.zone)
                      and self.mcu_used[n.id] + v.mcu_mhz <= n.mcu_mhz + 1e-9
                      and self.ram_used[n.id] + v.ram_kb <= n.ram_kb + 1e-9]
                cs.sort(key=lambda c: (node[c].idle_cpu_mw, c))
                self.cands[(bp.id, v.id)] = cs
                self.min_load[(bp.id, v.id)] = min(
                    (node[c].max_cpu_mw * (v.mcu_mhz / node[c].mcu_mhz) for c in cs), default=math.inf)
        # remaining processing lower bound, per bp index (all later bps embedded)
        self.rem_cpu = [0.0] * (len(self.bps) + 1)
        for i in range(len(self.bps) - 1, -1, -1):
            bp = self.bps[i]
            self.rem_cpu[i] = self.rem_cpu[i + 1] + sum(self.min_load[(bp.id, v.id)] for v in bp.vnodes)
        self.minpow_cache: dict[tuple[int, int], float] = {}
        self.paths_cache: dict[tuple[int, int], tuple[list, bool]] = {}

        self.assign: dict[tuple[int, int], int] = {}
        self.bp_hosts: dict[int, dict[int, int]] = {}
        self.nblocked = 0
        self.blocked: list[int] = []
        self.best = None  # (key, assignment, paths, blocked)
        self.nodes = 0
        self.exhausted = True
        self.truncated = False
        self.t0 = time.monotonic()

    # -- bookkeeping --------------------------------------------------------
    def _lat(self, arrival: float) -> float:
        if arrival <= 0:
            return 0.0
        if arrival > self.max_arrival + 1e-9:
            return math.inf
        return self.table.lookup(min(arrival, self.max_arrival))

    def _host(self, c: int, v, sign: int):
        node = self.net.node[c]
        if sign > 0:
            if self.hosted[c] == 0:
                self.tpp_lb += node.idle_cpu_mw
            self.hosted[c] += 1
        self.mcu_used[c] += sign * v.mcu_mhz
        self.ram_used[c] += sign * v.ram_kb
        self.tpp_lb += sign * node.max_cpu_mw * (v.mcu_mhz / node.mcu_mhz)
        if sign < 0:
            self.hosted[c] -= 1
            if self.hosted[c] == 0:
                self.tpp_lb -= node.idle_cpu_mw

    def _minpow(self, c: int, d: int) -> float:
        key = (c, d)
        if key not in self.minpow_cache:
            try:
                p = shortest_path(self.net, c, d, WeightMode.LINK_POWER)
                w = sum(self.net.link[ef].power_per_kbps for ef in path_links(p))
            except NoRouteError:
                w = math.inf
            self.minpow_cache[key] = w
        return self.minpow_cache[key]

    def _demand(self, c: int, d: int, t: float, sign: int):
        """Add/remove a host-pair demand's contribution to the network bounds."""
        node = self.net.node
        for n in (c, d):
            before = self.net_cnt[n]
            self.net_cnt[n] += sign
            if before == 0 and sign > 0:
                self.idle_lb += node[n].idle_net_mw
            elif self.net_cnt[n] == 0 and sign < 0:
                self.idle_lb -= node[n].idle_net_mw
        self.link_lb += sign * t * self._minpow(c, d)
        self.out_lb[c] += sign * t
        self.in_lb[d] += sign * t

    def _lat_total(self) -> float:
        return math.fsum(self._lat(a) for a in self.in_lb.values())

    def _bound(self, bp_index: int, pending_cpu: float) -> float:
        obj = self.obj
        cpu = self.tpp_lb + pending_cpu + self.rem_cpu[bp_index]
        net = self.idle_lb + self.link_lb
        if obj.kind == ObjectiveKind.ENERGY:
            return cpu + net
        lat = self._lat_total()
        if obj.kind == ObjectiveKind.LATENCY:
            return lat
        return obj.alpha * lat + obj.beta * net + obj.gamma * cpu

    def _saturated(self, c: int, d: int) -> bool:
        node = self.net.node
        return (self.out_lb[c] > node[c].capacity_kbps + 1e-9
                or self.in_lb[d] > self.max_arrival + 1e-9)

    def _tick(self):
        self.nodes += 1
        lim = self.budget.node_limit
        if lim is not None and self.nodes > lim:
            self.exhausted = False
            raise _Stop
        tl = self.budget.time_limit
        if tl is not None and self.nodes % 512 == 0 and time.monotonic() - self.t0 > tl:
            self.exhausted = False
            raise _Stop

    def _prunable(self, bound: float) -> bool:
        if self.best is None:
            return False
        bkey = self.best[0]
        if self.nblocked > bkey[0]:
            return True
        return self.nblocked == bkey[0] and _within_tol(bound, bkey[1])

    # -- assignment phase ---------------------------------------------------
    def options_for(self, bp: BusinessProcess, v) -> list[int]:
        hosts = self.bp_hosts.get(bp.id, {})
        node = self.net.node
        out = []
        for c in self.cands[(bp.id, v.id)]:
            if self.options.coexistence and hosts.get(c):
                continue
            if self.mcu_used[c] + v.mcu_mhz > node[c].mcu_mhz + 1e-9:
                continue
            if self.ram_used[c] + v.ram_kb > node[c].ram_kb + 1e-9:
                continue
            out.append(c)
        return out

    def top_choices(self) -> list:
        if not self.bps:
            return [None]
        bp = self.bps[0]
        out: list = list(self.options_for(bp, bp.vnodes[0]))
        if self.allow_blocking:
            out.append("block")
        return out

    def run(self, first_choice=None, restrict=False):
        try:
            if restrict:
                self._bp(0, 0, forced=first_choice)
            else:
                self._bp(0, 0)
        except _Stop:
            pass

    def _bp(self, i: int, j: int, forced=None):
        """Place vnode ``j`` of BP ``i`` (or move on)."""
        self._tick()
        if i == len(self.bps):
            self._route_phase()
            return
        bp = self.bps[i]
        if j == len(bp.vnodes):
            self._bp(i + 1, 0)
            return
        v = bp.vnodes[j]
        choices = self.options_for(bp, v)
        if j == 0 and self.allow_blocking:
            choices = choices + ["block"]
        if forced is not None:
            choices = [forced] if forced in choices else []
        pending = sum(self.min_load[(bp.id, w.id)] for w in bp.vnodes[j + 1:])
        for c in choices:
            if c == "block":
                self.nblocked += 1
                self.blocked.append(bp.id)
                if not self._prunable(self._bound(i + 1, 0.0)):
                    self._bp(i + 1, 0)
                self.blocked.pop()
                self.nblocked -= 1
                continue
            key = (bp.id, v.id)
            self.assign[key] = c
            hosts = self.bp_hosts.setdefault(bp.id, {})
            hosts[c] = hosts.get(c, 0) + 1
            self._host(c, v, +1)
            done = []
            ok = True
            for vl in bp.vlinks:
                other = vl.b if vl.a == v.id else vl.a if vl.b == v.id else None
                if other is None or (bp.id, other) not in self.assign:
                    continue
                src, dst = self.assign[(bp.id, vl.a)], self.assign[(bp.id, vl.b)]
                if src == dst:
                    continue
                self._demand(src, dst, vl.kbps, +1)
                done.append((src, dst, vl.kbps))
                if self._saturated(src, dst) or not math.isfinite(self._minpow(src, dst)):
                    ok = False
            if ok and not self._prunable(self._bound(i + 1, pending)):
                self._bp(i, j + 1)
            for src, dst, t in reversed(done):
                self._demand(src, dst, t, -1)
            self._host(c, v, -1)
            hosts[c] -= 1
            if not hosts[c]:
                del hosts[c]
            del self.assign[key]

    # -- routing phase ------------------------------------------------------
    def _candidates(self, c: int, d: int) -> list:
        key = (c, d)
        if key not in self.paths_cache:
            if self.k == math.inf:
                paths, trunc = k_shortest_paths(self.net, c, d, math.inf, self.mode), False
            else:
                more = k_shortest_paths(self.net, c, d, self.k + 1, self.mode)
                paths, trunc = more[: self.k], len(more) > self.k
            self.paths_cache[key] = (paths, trunc)
        return self.paths_cache[key]

    def _route_phase(self):
        dems = []
        for bp in self.bps:
            if bp.id in self.blocked:
                continue
            for k, vl in enumerate(bp.vlinks):
                c, d = self.assign[(bp.id, vl.a)], self.assign[(bp.id, vl.b)]
                dems.append(((bp.id, k), c, d, vl.kbps))
        inter = [x for x in dems if x[1] != x[2]]
        for _, c, d, _ in inter:
            if self._candidates(c, d)[1]:
                self.truncated = True
        node = self.net.node
        out_used = {n: 0.0 for n in self.net.node_ids}
        in_used = dict(out_used)
        for (e, f), load in self.frozen.routing.link_loads.items():
            out_used[e] += load
            in_used[f] += load
        # suffix lower bounds for demands not yet routed
        rem_pow = [0.0] * (len(inter) + 1)
        for i in range(len(inter) - 1, -1, -1):
            _, c, d, t = inter[i]
            rem_pow[i] = rem_pow[i + 1] + t * self._minpow(c, d)
        chosen: dict = {}
        state = {"link": self.frozen_link_power}

        def bound(i: int) -> float:
            lat = 0.0
            kind = self.obj.kind
            if kind != ObjectiveKind.ENERGY:
                extra: dict[int, float] = {}
                for _, c, d, t in inter[i:]:
                    extra[d] = extra.get(d, 0.0) + t
                lat = math.fsum(self._lat(in_used[n] + extra.get(n, 0.0)) for n in in_used)
                if kind == ObjectiveKind.LATENCY:
                    return lat
            active = {n for n in out_used if out_used[n] > 0 or in_used[n] > 0}
            for _, c, d, _ in inter[i:]:
                active.update((c, d))
            net = sum(node[n].idle_net_mw for n in active) + state["link"] + rem_pow[i]
            cpu = self.tpp_lb
            if kind == ObjectiveKind.ENERGY:
                return cpu + net
            return self.obj.alpha * lat + self.obj.beta * net + self.obj.gamma * cpu

        def rec(i: int):
            self._tick()
            if i == len(inter):
                self._leaf(dems, chosen)
                return
            did, c, d, t = inter[i]
            for p in self._candidates(c, d)[0]:
                if any(out_used[u] + t > node[u].capacity_kbps + 1e-9 for u in p[:-1]):
                    continue
                if any(in_used[u] + t > self.max_arrival + 1e-9 for u in p[1:]):
                    continue
                dp = 0.0
                for ef in path_links(p):
                    dp += t * self.net.link[ef].power_per_kbps
                for u in p[:-1]:
                    out_used[u] += t
                for u in p[1:]:
                    in_used[u] += t
                state["link"] += dp
                chosen[did] = p
                if not self._prunable(bound(i + 1)):
                    rec(i + 1)
                del chosen[did]
                state["link"] -= dp
                for u in p[:-1]:
                    out_used[u] -= t
                for u in p[1:]:
                    in_used[u] -= t

        if not self._prunable(bound(0)):
            rec(0)

    def _leaf(self, dems, chosen):
        assignment = dict(self.frozen.assignment)
        assignment.update(self.assign)
        paths = dict(self.frozen.routing.paths)
        pvec = []
        for did, c, d, _ in dems:
            p = chosen.get(did, ())
            paths[did] = p
            pvec.append(p)
        try:
            sol = build_solution(self.net, self.all_bps, assignment, paths, self.obj,
                                 Certificate.BEST_FOUND, self.blocked)
        except SaturationError:
            return
        avec = tuple(-1 if bp.id in self.blocked else self.assign[(bp.id, v.id)]
                     for bp in self.bps for v in bp.vnodes)
        key = (self.nblocked, sol.objective, self.obj.secondary(sol.metrics), avec, tuple(pvec))
        if self.best is None or key < self.best[0]:
            self.best = (key, sol)


def _run_subtree(args):
    network, bps, options, objective, budget, frozen, allow_blocking, choice, incumbent = args
    s = _Search(network, bps, options, objective, budget, frozen, allow_blocking)
    s.best = incumbent
    s.run(choice, restrict=True)
    return s.best, s.exhausted, s.truncated


def solve_exact(network: PhysicalNetwork, bps: Sequence[BusinessProcess],
                options: EmbeddingOptions = EmbeddingOptions(), objective: Objective = ENERGY,
                budget: Budget = Budget(), *, frozen: Frozen | None = None,
                allow_blocking: bool = False, workers: int = 1) -> Solution:
    """Optimal embedding of ``bps`` on top of any ``frozen`` embeddings.

    With ``allow_blocking`` a BP may be rejected; fewer rejections always win
    over a better objective. The search is split into one subtree per host
    choice of the first vnode; subtrees share nothing but a deterministic
    starting incumbent, so the result does not depend on ``workers``.
    """
    frozen = frozen or Frozen()
    bps = sorted(bps, key=lambda b: b.id)
    root = _Search(network, bps, options, objective, budget, frozen, allow_blocking)
    if not bps:
        return build_solution(network, frozen.bps, frozen.assignment, frozen.routing.paths,
                              objective, Certificate.PROVED_OPTIMAL)

    # short deterministic dive for a starting incumbent
    dive_budget = Budget(budget.k_paths, min(2_000, budget.node_limit or 2_000), None)
    dive = _Search(network, bps, options, objective, dive_budget, frozen, allow_blocking)
    dive.run()
    incumbent = dive.best
    if dive.exhausted:
        results = [(dive.best, True, dive.truncated)]
    else:
        jobs = [(network, bps, options, objective, budget, frozen, allow_blocking, ch, incumbent)
                for ch in root.top_choices()]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_run_subtree, jobs))
        else:
            results = [_run_subtree(j) for j in jobs]
    best = None
    exhausted = all(r[1] for r in results)
    truncated = any(r[2] for r in results)
    for b, _, _ in results:
        if b is not None and (best is None or b[0] < best[0]):
            best = b
    if best is None:
        cert = Certificate.INFEASIBLE if exhausted else Certificate.BEST_FOUND
        return infeasible_solution(network, frozen, bps, objective, cert)
    cert = Certificate.PROVED_OPTIMAL if exhausted and not truncated else Certificate.BEST_FOUND
    sol = best[1]
    return Solution(sol.assignment, sol.routing, sol.metrics, sol.objective, cert, sol.blocked)


@dataclass(frozen=True)
class OracleLimits:
    enumeration_cap: int = 2_000_000


def brute_force_oracle(network: PhysicalNetwork, bps: Sequence[BusinessProcess],
                       options: EmbeddingOptions = EmbeddingOptions(), objective: Objective = ENERGY,
                       limits: OracleLimits = OracleLimits(), *, frozen: Frozen | None = None,
                       allow_blocking: bool = False) -> Solution:
    """Enumerate every embedding and return the best one.

    Every host choice that meets a vnode's function and zone requirement is
    tried, combined with every simple path for every inter-host demand; each
    combination is screened by the feasibility checks and the saturation
    limit. Intended for tiny instances only.
    """
    frozen = frozen or Frozen()
    bps = sorted(bps, key=lambda b: b.id)
    hosts = {(bp.id, v.id): [n.id for n in network.nodes if v.function in n.functions and v.zone_ok(n.zone)]
             for bp in bps for v in bp.vnodes}
    est = 1
    for hs in hosts.values():
        est *= max(1, len(hs))
    if allow_blocking:
        est *= 2 ** len(bps)
    n_dem = sum(len(bp.vlinks) for bp in bps)
    if est > limits.enumeration_cap:
        raise OracleTooLarge(f"host combinations {est} exceed cap {limits.enumeration_cap}")
    if n_dem:
        # paths per demand that still fit under the cap; count lazily up to that
        room = int((limits.enumeration_cap / est) ** (1.0 / n_dem) + 1e-9)
        ids = network.node_ids
        for c in ids:
            for d in ids:
                if c < d and len(list(itertools.islice(nx.all_simple_paths(network.graph, c, d), room + 1))) > room:
                    raise OracleTooLarge(f"more than {room} paths between {c} and {d}; "
                                         f"enumeration would exceed cap {limits.enumeration_cap}")

    all_bps = list(frozen.bps) + bps
    best = None
    subsets = itertools.product((False, True), repeat=len(bps)) if allow_blocking else [(False,) * len(bps)]
    for mask in subsets:
        blocked = [bp.id for bp, m in zip(bps, mask) if m]
        live = [bp for bp, m in zip(bps, mask) if not m]
        items = [(bp.id, v.id) for bp in live for v in bp.vnodes]
        for combo in itertools.product(*(hosts[it] for it in items)):
            assignment = dict(frozen.assignment)
            assignment.update(zip(items, combo))
            if check_assignment(network, list(frozen.bps) + live, assignment, options):
                continue
            dems = [((bp.id, k), assignment[(bp.id, vl.a)], assignment[(bp.id, vl.b)])
                    for bp in live for k, vl in enumerate(bp.vlinks)]
            choices = [all_simple_paths(network, c, d) if c != d else [()] for _, c, d in dems]
            for pcombo in itertools.product(*choices):
                paths = dict(frozen.routing.paths)
                paths.update({did: p for (did, _, _), p in zip(dems, pcombo)})
                live_all = list(frozen.bps) + live
                plan = plan_from_paths(live_all, assignment, paths)
                if check_routing(network, live_all, assignment, plan):
                    continue
                try:
                    report = evaluate(network, live_all, assignment, plan)
                except SaturationError:
                    continue
                value = objective.value(report)
                amap = dict(zip(items, combo))
                avec = tuple(amap.get((bp.id, v.id), -1) for bp in bps for v in bp.vnodes)
                key = (len(blocked), value, objective.secondary(report), avec, tuple(pcombo))
                if best is None or key < best[0]:
                    best = (key, assignment, paths, blocked)
    if best is None:
        return infeasible_solution(network, frozen, bps, objective)
    _, assignment, paths, blocked = best
    return build_solution(network, all_bps, assignment, paths, objective, Certificate.PROVED_OPTIMAL, blocked)


__all__ = [
    "Objective", "ObjectiveKind", "ENERGY", "LATENCY", "WEIGHTED", "Certificate", "Budget",
    "Solution", "Frozen", "OracleLimits", "OracleTooLarge", "solve_exact", "brute_force_oracle",
    "build_solution",
]

"""Batched BP arrivals: sequential embedding versus re-provisioning, and savings tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .feasibility import EmbeddingOptions
from .heuristics import embed_eluse, embed_rese, embed_rlse
from .model import BusinessProcess, PhysicalNetwork
from .solver import ENERGY, Budget, Frozen, Objective, Solution, solve_exact


class Method(str, Enum):
    EXACT = "exact"
    RESE = "rese"
    RLSE = "rlse"
    ELUSE = "eluse"


class Strategy(str, Enum):
    SEQUENTIAL = "sequential"
    REPROVISION = "reprovision"


@dataclass(frozen=True)
class ArrivalSchedule:
    batches: tuple[tuple[BusinessProcess, ...], ...]

    def __post_init__(self):
        ids = [bp.id for batch in self.batches for bp in batch]
        if len(ids) != len(set(ids)):
            raise ValueError("BP ids must be unique across batches")

    @classmethod
    def chunked(cls, bps: Sequence[BusinessProcess], batch_size: int = 2) -> "ArrivalSchedule":
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        bps = list(bps)
        return cls(tuple(tuple(bps[i:i + batch_size]) for i in range(0, len(bps), batch_size)))


@dataclass(frozen=True)
class MethodConfig:
    """Everything besides the instance that decides a method's output."""

    method: Method = Method.RESE
    seed: int = 0
    threshold: float = 0.6
    budget: Budget = Budget()
    workers: int = 1


@dataclass(frozen=True)
class BatchRecord:
    batch: int
    offered: int
    embedded: tuple[int, ...]
    blocked: tuple[int, ...]
    tpp: float
    tnp: float
    tl: float
    avg_latency: float
    objective: float
    certificate: str
    solution: Solution = field(repr=False, compare=False, default=None)

    @property
    def power(self) -> float:
        return math.fsum((self.tpp, self.tnp))


@dataclass(frozen=True)
class ScenarioResult:
    method: str
    strategy: Strategy
    options: EmbeddingOptions
    objective: Objective
    batches: tuple[BatchRecord, ...]


def _embed(network, bps, options, objective, cfg: MethodConfig, frozen: Frozen | None) -> Solution:
    m = Method(cfg.method)
    if m == Method.EXACT:
        return solve_exact(network, bps, options, objective, cfg.budget, frozen=frozen,
                           allow_blocking=True, workers=cfg.workers)
    if m == Method.RESE:
        return embed_rese(network, bps, options, objective, frozen=frozen)
    if m == Method.RLSE:
        return embed_rlse(network, bps, options, cfg.threshold, objective, frozen=frozen)
    return embed_eluse(network, bps, options, cfg.seed, objective, frozen=frozen)


def _record(i: int, offered: int, sol: Solution, blocked) -> BatchRecord:
    m = sol.metrics
    return BatchRecord(i, offered, sol.embedded, tuple(sorted(blocked)), m.tpp, m.tnp, m.tl,
                       m.avg_latency, sol.objective, sol.certificate.value, sol)


def run_sequential(network: PhysicalNetwork, schedule: ArrivalSchedule, method: MethodConfig | Method | str,
                   objective: Objective = ENERGY, options: EmbeddingOptions = EmbeddingOptions()) -> ScenarioResult:
    """Embed each batch on top of the frozen earlier embeddings; rejections are final."""
    cfg = method if isinstance(method, MethodConfig) else MethodConfig(Method(method))
    done: list[BusinessProcess] = []
    blocked: list[int] = []
    prev: Solution | None = None
    records = []
    offered = 0
    for i, batch in enumerate(schedule.batches, 1):
        offered += len(batch)
        sol = _embed(network, batch, options, objective, cfg, Frozen.of(prev, done))
        blocked.extend(sol.blocked)
        done.extend(b for b in batch if b.id not in sol.blocked)
        prev = sol
        records.append(_record(i, offered, sol, blocked))
    return ScenarioResult(cfg.method.value, Strategy.SEQUENTIAL, options, objective, tuple(records))


def run_reprovisioning(network: PhysicalNetwork, schedule: ArrivalSchedule, method: MethodConfig | Method | str,
                       objective: Objective = ENERGY, options: EmbeddingOptions = EmbeddingOptions()) -> ScenarioResult:
    """Re-embed every BP offered so far from scratch after each batch."""
    cfg = method if isinstance(method, MethodConfig) else MethodConfig(Method(method))
    offered: list[BusinessProcess] = []
    records = []
    for i, batch in enumerate(schedule.batches, 1):
        offered.extend(batch)
        sol = _embed(network, offered, options, objective, cfg, None)
        records.append(_record(i, len(offered), sol, sol.blocked))
    return ScenarioResult(cfg.method.value, Strategy.REPROVISION, options, objective, tuple(records))


def run(network, schedule, method, objective=ENERGY, options=EmbeddingOptions(),
        strategy: Strategy | str = Strategy.REPROVISION) -> ScenarioResult:
    if Strategy(strategy) == Strategy.SEQUENTIAL:
        return run_sequential(network, schedule, method, objective, options)
    return run_reprovisioning(network, schedule, method, objective, options)


@dataclass(frozen=True)
class MeanRecord:
    """Per-batch metrics averaged over several runs (seeded baselines)."""

    batch: int
    offered: int
    embedded: float
    blocked: float
    tpp: float
    tnp: float
    tl: float
    avg_latency: float
    objective: float

    @property
    def power(self) -> float:
        return math.fsum((self.tpp, self.tnp))


def mean_batches(results: Sequence[ScenarioResult]) -> tuple[MeanRecord, ...]:
    if not results:
        raise ValueError("need at least one result")
    n = len(results[0].batches)
    if any(len(r.batches) != n for r in results):
        raise ValueError("results cover different schedules")
    out = []
    for i in range(n):
        rows = [r.batches[i] for r in results]

        def avg(get):
            return math.fsum(get(r) for r in rows) / len(rows)

        out.append(MeanRecord(rows[0].batch, rows[0].offered, avg(lambda r: len(r.embedded)),
                              avg(lambda r: len(r.blocked)), avg(lambda r: r.tpp), avg(lambda r: r.tnp),
                              avg(lambda r: r.tl), avg(lambda r: r.avg_latency), avg(lambda r: r.objective)))
    return tuple(out)


@dataclass(frozen=True)
class SavingsRow:
    batch: int
    offered: int
    power: float
    baseline_power: float
    power_saving: float | None  # percent; None when the baseline is zero
    tl: float
    baseline_tl: float
    latency_reduction: float | None
    avg_latency: float
    baseline_avg_latency: float


@dataclass(frozen=True)
class SavingsTable:
    rows: tuple[SavingsRow, ...]

    @staticmethod
    def _mean(values) -> float | None:
        vals = [v for v in values if v is not None]
        return math.fsum(vals) / len(vals) if vals else None

    @property
    def mean_power_saving(self) -> float | None:
        return self._mean(r.power_saving for r in self.rows)

    @property
    def mean_latency_reduction(self) -> float | None:
        return self._mean(r.latency_reduction for r in self.rows)


def saving(value: float, baseline: float) -> float | None:
    """Percent saved relative to ``baseline``; None when the baseline is zero."""
    if baseline == 0:
        return None
    return 100.0 * (1.0 - value / baseline)


def compare(result: ScenarioResult, baseline: ScenarioResult | Sequence[ScenarioResult]) -> SavingsTable:
    """Per-batch power saving and TL reduction against a baseline (or the mean of several)."""
    base_runs = [baseline] if isinstance(baseline, ScenarioResult) else list(baseline)
    base = mean_batches(base_runs)
    if len(base) != len(result.batches):
        raise ValueError("result and baseline cover different schedules")
    rows = []
    for r, b in zip(result.batches, base):
        if r.offered != b.offered:
            raise ValueError(f"batch {r.batch}: offered {r.offered} vs baseline {b.offered}")
        rows.append(SavingsRow(r.batch, r.offered, r.power, b.power, saving(r.power, b.power),
                               r.tl, b.tl, saving(r.tl, b.tl), r.avg_latency, b.avg_latency))
    return SavingsTable(tuple(rows))


__all__ = ["Method", "Strategy", "ArrivalSchedule", "MethodConfig", "BatchRecord", "ScenarioResult",
           "run_sequential", "run_reprovisioning", "run", "mean_batches", "compare", "saving",
           "SavingsRow", "SavingsTable", "MeanRecord"]

"""Simulated-annealing path selection with a stall counter and best-ever
recording."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .encoding import Chromosome, bottleneck_ab, path_text, random_path
from .errors import NoFeasiblePathError
from .qos import QosRequirement, admissible_subgraph
from .topology import Topology


@dataclass(frozen=True)
class SaConfig:
    initial_temperature: float = 1000.0
    stop_temperature: float = 50.0
    inner_iterations: int = 2
    cooling_factor: float = 0.2
    stall_limit: int = 5
    seed: int = 0

    def __post_init__(self):
        if not self.initial_temperature > self.stop_temperature > 0:
            raise ValueError("need initial_temperature > stop_temperature > 0")
        if not 0 < self.cooling_factor < 1:
            raise ValueError("cooling_factor must lie in (0, 1)")
        if self.inner_iterations < 1:
            raise ValueError("inner_iterations must be at least 1")
        if self.stall_limit < 1:
            raise ValueError("stall_limit must be at least 1")


@dataclass(frozen=True)
class SaTraceRow:
    current: Chromosome
    candidate: Chromosome
    delta: float
    stall_remaining: int
    temperature: float
    accepted: bool


@dataclass(frozen=True)
class Objective:
    """Bottleneck Ab as a share of a fixed pool's total.

    The denominator is frozen when the run starts, so it rescales deltas but
    never reorders solutions.
    """

    topology: Topology
    req: QosRequirement
    denominator: float

    @classmethod
    def from_pool(cls, pool: Sequence[Chromosome], t: Topology, req: QosRequirement) -> "Objective":
        total = sum(max(bottleneck_ab(t, c, req), 0.0) for c in pool)
        if not total > 0:
            raise NoFeasiblePathError("objective pool has no feasible member")
        return cls(t, req, total)

    def __call__(self, c: Chromosome) -> float:
        return max(bottleneck_ab(self.topology, c, self.req), 0.0) / self.denominator


def sa_objective(c: Chromosome, pool: Sequence[Chromosome], t: Topology, req: QosRequirement) -> float:
    return Objective.from_pool(pool, t, req)(c)


def delta(current: Chromosome, candidate: Chromosome, objective: Objective) -> float:
    return objective(candidate) - objective(current)


def accept(dlt: float, temperature: float, rng: np.random.Generator) -> bool:
    """Metropolis rule for a maximized objective.

    Improvements are always taken; a move that loses ``|dlt|`` survives with
    probability ``exp(dlt / temperature)``.
    """
    if dlt > 0:
        return True
    return bool(rng.random() < math.exp(dlt / temperature))


def neighbor(t: Topology, rng: np.random.Generator) -> Chromosome:
    """A fresh random path; the neighbourhood is the whole solution space."""
    return random_path(t, rng)


def _best_key(objective: Objective, c: Chromosome):
    return (-objective(c), len(c), path_text(c))


def warmup_pool(t: Topology, current: Chromosome, cfg: SaConfig, rng: np.random.Generator) -> list[Chromosome]:
    pool = [current]
    for _ in range(max(cfg.inner_iterations * 4, 8)):
        c = neighbor(t, rng)
        if c not in pool:
            pool.append(c)
    return pool


@dataclass
class SaResult:
    best: Chromosome
    trace: list[SaTraceRow]
    temperatures: list[float]
    final_state: Chromosome
    objective: Objective
    pool: list[Chromosome] = field(default_factory=list)
    history: list[Chromosome] = field(default_factory=list)

    @property
    def evaluations(self) -> int:
        return len(self.trace)


def anneal(
    t: Topology,
    req: QosRequirement,
    cfg: SaConfig,
    max_evaluations: int | None = None,
) -> SaResult:
    """Run the annealer and keep everything a report needs.

    ``temperatures`` lists every temperature reached, including the one that
    ended the loop. ``max_evaluations`` caps the number of candidates drawn;
    a capped run is an exact prefix of the uncapped one.
    """
    work = admissible_subgraph(t, req)
    rng = np.random.default_rng(cfg.seed)
    current = neighbor(work, rng)
    pool = warmup_pool(work, current, cfg, rng)
    objective = Objective.from_pool(pool, work, req)

    best = current
    history = [current]
    trace: list[SaTraceRow] = []
    temperatures = []
    stall = cfg.stall_limit
    temperature = cfg.initial_temperature
    budget_left = math.inf if max_evaluations is None else max_evaluations

    while stall > 0 and temperature > cfg.stop_temperature and budget_left > 0:
        temperatures.append(temperature)
        for _ in range(cfg.inner_iterations):
            if budget_left <= 0 or stall <= 0:
                break
            candidate = neighbor(work, rng)
            budget_left -= 1
            dlt = delta(current, candidate, objective)
            taken = accept(dlt, temperature, rng)
            before = current
            if taken:
                current = candidate
                stall = cfg.stall_limit
                history.append(current)
                if _best_key(objective, current) < _best_key(objective, best):
                    best = current
            else:
                stall -= 1
            trace.append(SaTraceRow(before, candidate, dlt, stall, temperature, taken))
        temperature *= cfg.cooling_factor
    temperatures.append(temperature)
    return SaResult(best, trace, temperatures, current, objective, pool, history)


def run_sa(t: Topology, req: QosRequirement, cfg: SaConfig) -> tuple[Chromosome, list[SaTraceRow]]:
    result = anneal(t, req, cfg)
    return result.best, result.trace

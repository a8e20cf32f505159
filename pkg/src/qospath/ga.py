"""Genetic path selection: bandwidth-share fitness, roulette-wheel selection
with elitism, single-point and partially mapped crossover, insertion mutation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .encoding import Chromosome, bottleneck_ab, hop_count, is_valid, path_text, random_path
from .errors import DegeneratePopulationError, NoFeasiblePathError
from .qos import QosRequirement, admissible_subgraph
from .topology import Topology

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 5
    max_generations: int = 5
    crossover_probability: float = 0.8
    # "0.01 percent of the time"
    mutation_probability: float = 0.0001
    initial_pool_size: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be at least 1")
        if self.max_generations < 1:
            raise ValueError("max_generations must be at least 1")
        if self.initial_pool_size < 1:
            raise ValueError("initial_pool_size must be at least 1")
        for name in ("crossover_probability", "mutation_probability"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class FitnessRow:
    chromosome: Chromosome
    ab: float
    fitness: float
    nodes_visited: int
    selection_probability: float


@dataclass(frozen=True)
class OperatorRecord:
    operator: str
    parents: tuple
    offspring: tuple = ()
    kept: tuple = ()


@dataclass
class GenerationReport:
    generation_index: int
    rows: list[FitnessRow]
    operator_log: list[OperatorRecord] = field(default_factory=list)

    @property
    def max_fitness(self) -> float:
        return max(row.fitness for row in self.rows)

    @property
    def max_ab(self) -> float:
        return max(row.ab for row in self.rows)


def fitness_table(pop: Sequence[Chromosome], t: Topology, req: QosRequirement) -> list[FitnessRow]:
    """Score a population.

    Fitness is each member's bottleneck Ab as a share of the population total,
    with infeasible members (Ab <= 0) clamped to zero. Selection probability
    renormalizes the fitness values over the population.
    """
    if not pop:
        raise ValueError("population is empty")
    abs_ = [bottleneck_ab(t, c, req) for c in pop]
    clamped = [max(ab, 0.0) for ab in abs_]
    total = sum(clamped)
    fitness = [x / total if total > 0 else 0.0 for x in clamped]
    f_total = sum(fitness)
    probs = [f / f_total if f_total > 0 else 0.0 for f in fitness]
    return [
        FitnessRow(tuple(c), ab, f, hop_count(c), p)
        for c, ab, f, p in zip(pop, abs_, fitness, probs)
    ]


def roulette_select(rows: Sequence[FitnessRow], rng: np.random.Generator) -> Chromosome:
    probs = np.array([row.selection_probability for row in rows], dtype=float)
    total = probs.sum()
    if not total > 0:
        raise DegeneratePopulationError("every chromosome has zero selection probability")
    cumulative = np.cumsum(probs)
    idx = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    idx = min(idx, len(rows) - 1)
    while probs[idx] <= 0:
        idx -= 1
    return rows[idx].chromosome


def _second_parent(rows, first, rng):
    others = [row for row in rows if row.chromosome != first and row.selection_probability > 0]
    if not others:
        return None
    return roulette_select(others, rng)


def single_point_crossover(a: Chromosome, b: Chromosome, rng: np.random.Generator, t: Topology):
    """Splice the parents at a randomly chosen shared intermediate node.

    Returns the valid offspring as a tuple, or ``None`` when the parents share
    no intermediate node or neither splice is loop-free.
    """
    common = sorted(set(a[1:-1]) & set(b[1:-1]))
    if not common:
        return None
    site = common[int(rng.integers(len(common)))]
    ia, ib = a.index(site), b.index(site)
    children = (a[: ia + 1] + b[ib + 1 :], b[: ib + 1] + a[ia + 1 :])
    valid = tuple(c for c in children if is_valid(t, c))
    return valid or None


def _common_site_pairs(a, b):
    pos_b = {v: j for j, v in enumerate(b)}
    common = [(i, pos_b[v]) for i, v in enumerate(a) if v in pos_b]
    return [
        (x, y)
        for n, x in enumerate(common)
        for y in common[n + 1 :]
        if x[1] < y[1]
    ]


def _pmx_child(outer, inner, i0, i1, j0, j1):
    segment = inner[j0 : j1 + 1]
    seg = set(segment)
    head = tuple(v for v in outer[:i0] if v not in seg)
    tail = tuple(v for v in outer[i1 + 1 :] if v not in seg)
    return head + segment + tail


def pmx_crossover(a: Chromosome, b: Chromosome, rng: np.random.Generator, t: Topology):
    """Partially mapped crossover for variable-length paths.

    Two crossing sites are picked among nodes both parents visit in the same
    order (the endpoints always qualify). The stretches between the sites are
    exchanged, and any node duplicated outside the exchanged stretch is
    dropped. Offspring that fail validation are discarded.
    """
    pairs = _common_site_pairs(a, b)
    if not pairs:
        return None
    (i0, j0), (i1, j1) = pairs[int(rng.integers(len(pairs)))]
    children = (_pmx_child(a, b, i0, i1, j0, j1), _pmx_child(b, a, j0, j1, i0, i1))
    valid = tuple(c for c in children if is_valid(t, c))
    return valid or None


def insertion_mutation(c: Chromosome, rng: np.random.Generator, t: Topology) -> Chromosome:
    """Insert an off-path node between a random pair of consecutive nodes."""
    i = int(rng.integers(len(c) - 1))
    u, w = c[i], c[i + 1]
    on_path = set(c)
    candidates = [v for v in t.neighbor_ids(u) if v not in on_path and t.has_edge(v, w)]
    if not candidates:
        return c
    v = candidates[int(rng.integers(len(candidates)))]
    return c[: i + 1] + (v,) + c[i + 1 :]


def _elite_key(row: FitnessRow):
    return (-row.fitness, row.nodes_visited, path_text(row.chromosome))


def evolve_generation(
    report: GenerationReport,
    cfg: GaConfig,
    t: Topology,
    req: QosRequirement,
    rng: np.random.Generator,
) -> GenerationReport:
    rows = report.rows
    elite = min(rows, key=_elite_key).chromosome
    population = [elite]
    log = [OperatorRecord("elitism", (elite,), (elite,), (elite,))]
    # the current minimum-path answer survives as well, so the reported path never regresses
    ranked = rank_final(rows)
    if ranked and ranked[0].chromosome != elite and cfg.population_size >= 2:
        reference = ranked[0].chromosome
        population.append(reference)
        log.append(OperatorRecord("elitism", (reference,), (reference,), (reference,)))

    while len(population) < cfg.population_size:
        a = roulette_select(rows, rng)
        b = _second_parent(rows, a, rng)
        offspring = None
        if b is not None and rng.random() < cfg.crossover_probability:
            if len(a) >= 4 and len(b) >= 4:
                name, offspring = "pmx", pmx_crossover(a, b, rng, t)
            else:
                name, offspring = "single_point", single_point_crossover(a, b, rng, t)
            log.append(OperatorRecord(name, (a, b), offspring or ()))
        if not offspring:
            population.append(a)
            log.append(OperatorRecord("selection", (a,), (a,), (a,)))
            continue
        kept = []
        for child in offspring:
            if rng.random() < cfg.mutation_probability:
                mutated = insertion_mutation(child, rng, t)
                log.append(OperatorRecord("insertion", (child,), (mutated,)))
                child = mutated
            if is_valid(t, child) and len(population) < cfg.population_size:
                population.append(child)
                kept.append(child)
        if kept:
            last = log[-1]
            log[-1] = OperatorRecord(last.operator, last.parents, last.offspring, tuple(kept))

    return GenerationReport(report.generation_index + 1, fitness_table(population, t, req), log)


# distinct draws tolerated beyond the pool size before duplicates are allowed
_POOL_RETRIES = 20


def initial_population(t: Topology, req: QosRequirement, cfg: GaConfig, rng: np.random.Generator) -> list[Chromosome]:
    """Draw the random pool, deduplicate, and keep the fittest members."""
    pool_size = max(cfg.initial_pool_size, cfg.population_size)
    pool: list[Chromosome] = []
    seen = set()
    attempts = 0
    while len(pool) < pool_size and attempts < pool_size + _POOL_RETRIES:
        c = random_path(t, rng)
        attempts += 1
        if c not in seen:
            seen.add(c)
            pool.append(c)
    ranked = sorted(fitness_table(pool, t, req), key=_elite_key)
    population = [row.chromosome for row in ranked[: cfg.population_size]]
    while len(population) < cfg.population_size:
        population.append(random_path(t, rng))
    return population


def rank_final(rows: Sequence[FitnessRow]) -> list[FitnessRow]:
    """Feasible rows ordered by fewest nodes, then highest probability, then text."""
    feasible = [row for row in rows if row.fitness > 0]
    ordered = sorted(feasible, key=lambda r: (r.nodes_visited, -r.selection_probability, path_text(r.chromosome)))
    unique = []
    seen = set()
    for row in ordered:
        if row.chromosome not in seen:
            seen.add(row.chromosome)
            unique.append(row)
    return unique


def final_path_selection(rows: Sequence[FitnessRow]) -> Chromosome:
    ranked = rank_final(rows)
    if not ranked:
        raise NoFeasiblePathError("no chromosome in the population has positive fitness")
    best = ranked[0]
    if best.selection_probability < 0.5:
        logger.warning(
            "selected path %s has selection probability %.4f, below 0.5",
            path_text(best.chromosome),
            best.selection_probability,
        )
    return best.chromosome


def run_ga(t: Topology, req: QosRequirement, cfg: GaConfig) -> tuple[Chromosome, list[GenerationReport]]:
    """Run the full optimizer on the admissible part of ``t``.

    ``reports[0]`` is the initial population; ``reports[g]`` is the population
    after ``g`` generations. A shorter run with the same seed reproduces a
    prefix of this list.
    """
    work = admissible_subgraph(t, req)
    rng = np.random.default_rng(cfg.seed)
    population = initial_population(work, req, cfg, rng)
    reports = [GenerationReport(0, fitness_table(population, work, req))]
    for _ in range(cfg.max_generations):
        reports.append(evolve_generation(reports[-1], cfg, work, req, rng))
    return final_path_selection(reports[-1].rows), reports

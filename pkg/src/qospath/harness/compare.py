"""Seeded GA-versus-SA convergence comparison against the exhaustive oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..encoding import path_text
from ..ga import final_path_selection, run_ga
from ..oracle import MAX_ORACLE_NODES, enumerate_paths, exact_optimum
from ..errors import OracleSizeError
from ..qos import admissible_subgraph
from ..sa import anneal
from ..topology import Topology
from .config import ExperimentConfig
from .reports import _csv, dumps


@dataclass(frozen=True)
class TrialOutcome:
    topology: int
    trial: int
    seed: int
    method: str
    budget: int
    evaluations: int
    path: tuple
    matched: bool
    iterations_used: int


@dataclass
class ComparisonReport:
    budgets: tuple[int, ...]
    population_size: int
    optima: list[tuple] = field(default_factory=list)
    outcomes: list[TrialOutcome] = field(default_factory=list)

    def curve(self, method: str) -> list[tuple[int, float]]:
        """Match rate at each budget, in budget order."""
        points = []
        for budget in self.budgets:
            hits = [o.matched for o in self.outcomes if o.method == method and o.budget == budget]
            points.append((budget, sum(hits) / len(hits) if hits else 0.0))
        return points

    def max_slope(self, method: str) -> float:
        pts = self.curve(method)
        if len(pts) < 2:
            return 0.0
        return max((r1 - r0) / (b1 - b0) for (b0, r0), (b1, r1) in zip(pts, pts[1:]))

    def match_rate(self, method: str, budget: int) -> float:
        return dict(self.curve(method))[budget]


def compare_topology(
    t: Topology,
    cfg: ExperimentConfig,
    topology_index: int = 0,
    report: ComparisonReport | None = None,
) -> ComparisonReport:
    """Run every trial on one topology and append outcomes to ``report``.

    A GA run with ``g`` generations is a prefix of the longest run with the
    same seed, so one run per trial covers the whole budget sweep. SA budgets
    cap candidate evaluations at ``population_size * g``.
    """
    if t.node_count > MAX_ORACLE_NODES:
        raise OracleSizeError(f"compare needs an oracle-sized topology (at most {MAX_ORACLE_NODES} nodes)")
    budgets = tuple(sorted(set(cfg.budgets)))
    if report is None:
        report = ComparisonReport(budgets, cfg.ga.population_size)
    work = admissible_subgraph(t, cfg.qos)
    optimum = exact_optimum(enumerate_paths(work, cfg.qos))
    report.optima.append(optimum)
    for trial in range(cfg.trial_count):
        seed = cfg.seed_base + trial
        _, generations = run_ga(t, cfg.qos, cfg.ga_config(seed, max_generations=max(budgets)))
        for g in budgets:
            answer = final_path_selection(generations[g].rows)
            report.outcomes.append(
                TrialOutcome(topology_index, trial, seed, "ga", g, cfg.ga.population_size * g, answer, answer == optimum, g)
            )
        for g in budgets:
            cap = cfg.ga.population_size * g
            result = anneal(t, cfg.qos, cfg.sa_config(seed), max_evaluations=cap)
            report.outcomes.append(
                TrialOutcome(topology_index, trial, seed, "sa", g, cap, result.best, result.best == optimum, result.evaluations)
            )
    return report


def compare(topologies: Sequence[Topology], cfg: ExperimentConfig) -> ComparisonReport:
    report = ComparisonReport(tuple(sorted(set(cfg.budgets))), cfg.ga.population_size)
    for index, t in enumerate(topologies):
        compare_topology(t, cfg, index, report)
    return report


def curves_csv(report: ComparisonReport) -> str:
    rows = []
    for method in ("ga", "sa"):
        for budget, rate in report.curve(method):
            n = sum(1 for o in report.outcomes if o.method == method and o.budget == budget)
            rows.append((method, budget, report.population_size * budget, repr(rate), n))
    return _csv(("method", "budget", "evaluations", "match_rate", "trials"), rows)


def trials_csv(report: ComparisonReport) -> str:
    return _csv(
        ("topology", "trial", "seed", "method", "budget", "evaluations", "path", "matched", "iterations_used"),
        (
            (o.topology, o.trial, o.seed, o.method, o.budget, o.evaluations, path_text(o.path), int(o.matched), o.iterations_used)
            for o in report.outcomes
        ),
    )


def comparison_json(report: ComparisonReport) -> str:
    return dumps(
        {
            "budgets": list(report.budgets),
            "population_size": report.population_size,
            "optima": [path_text(o) for o in report.optima],
            "curves": {m: [{"budget": b, "match_rate": r} for b, r in report.curve(m)] for m in ("ga", "sa")},
            "max_slope": {m: report.max_slope(m) for m in ("ga", "sa")},
        }
    )

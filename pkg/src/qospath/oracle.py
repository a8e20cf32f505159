"""Exhaustive ground truth for small graphs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .encoding import Chromosome, path_text
from .errors import NoFeasiblePathError, OracleSizeError
from .qos import QosRequirement, link_admissible
from .topology import Topology

MAX_ORACLE_NODES = 14


@dataclass(frozen=True)
class CatalogEntry:
    chromosome: Chromosome
    ab: float
    fitness: float
    nodes_visited: int


@dataclass(frozen=True)
class PathCatalog:
    """Every simple source-destination path, scored with the whole catalog as
    the population, ordered by (nodes visited, fitness desc, text)."""

    topology: Topology
    req: QosRequirement
    entries: tuple[CatalogEntry, ...]

    @property
    def paths(self) -> list[Chromosome]:
        return [e.chromosome for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __contains__(self, c):
        return tuple(c) in {e.chromosome for e in self.entries}


def _sort_key(e: CatalogEntry):
    return (e.nodes_visited, -e.fitness, path_text(e.chromosome))


def enumerate_paths(t: Topology, req: QosRequirement | None = None) -> PathCatalog:
    if t.node_count > MAX_ORACLE_NODES:
        raise OracleSizeError(
            f"oracle refuses {t.node_count} nodes; exhaustive enumeration is capped at {MAX_ORACLE_NODES}"
        )
    req = req or QosRequirement()
    paths, lengths = _kernels.enumerate_simple_paths(t.adjacency_matrix(), int(t.source), int(t.destination))
    abs_ = _kernels.path_bottlenecks(paths, lengths, t.utility_matrix(), float(req.required_bandwidth))
    clamped = np.maximum(abs_, 0.0)
    total = clamped.sum()
    fitness = clamped / total if total > 0 else np.zeros_like(clamped)
    entries = [
        CatalogEntry(tuple(int(v) for v in paths[i, : lengths[i]]), float(abs_[i]), float(fitness[i]), int(lengths[i]))
        for i in range(len(paths))
    ]
    return PathCatalog(t, req, tuple(sorted(entries, key=_sort_key)))


def _feasible(t: Topology, c: Chromosome, req: QosRequirement) -> bool:
    return all(link_admissible(t.link(u, w), req) for u, w in zip(c, c[1:]))


def exact_optimum(catalog: PathCatalog, req: QosRequirement | None = None) -> Chromosome:
    """Fewest nodes, then widest bottleneck, then text order, among feasible paths."""
    req = catalog.req if req is None else req
    if req != catalog.req:
        catalog = enumerate_paths(catalog.topology, req)
    t = catalog.topology
    feasible = [e for e in catalog.entries if e.ab > 0 and _feasible(t, e.chromosome, req)]
    if not feasible:
        raise NoFeasiblePathError("no simple path satisfies the QoS requirement")
    return min(feasible, key=_sort_key).chromosome

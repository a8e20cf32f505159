"""Path chromosomes: loop-free node sequences from source to destination.

A chromosome is a plain ``tuple`` of node ids. Both optimizers share this
representation, and ``"-".join`` of the ids is its report form (``0-3-7-9``).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InfeasibleError
from .qos import QosRequirement, available_bandwidth
from .topology import Topology

Chromosome = tuple


def path_text(c: Sequence[int]) -> str:
    return "-".join(str(v) for v in c)


def parse_path(text: str) -> Chromosome:
    return tuple(int(part) for part in text.split("-"))


def random_path(t: Topology, rng: np.random.Generator) -> Chromosome:
    """Loop-avoiding random walk from source to destination.

    Each step moves to a uniformly chosen unvisited neighbour. A dead end is
    popped and excluded from the frame that led into it, so the walk is a
    randomized depth-first search and always terminates on a connected graph.
    """
    path = [t.source]
    on_path = {t.source}
    excluded: list[set[int]] = [set()]
    while path[-1] != t.destination:
        u = path[-1]
        skip = excluded[-1]
        candidates = [w for w in t.neighbor_ids(u) if w not in on_path and w not in skip]
        if not candidates:
            if len(path) == 1:
                raise InfeasibleError(f"destination {t.destination} unreachable from {t.source}")
            dead = path.pop()
            on_path.discard(dead)
            excluded.pop()
            excluded[-1].add(dead)
            continue
        w = candidates[int(rng.integers(len(candidates)))]
        path.append(w)
        on_path.add(w)
        excluded.append(set())
    return tuple(path)


def is_valid(t: Topology, c: Sequence[int]) -> bool:
    if len(c) < 2 or c[0] != t.source or c[-1] != t.destination:
        return False
    if len(set(c)) != len(c):
        return False
    if any(not 0 <= v < t.node_count for v in c):
        return False
    return all(t.has_edge(u, w) for u, w in zip(c, c[1:]))


def bottleneck_ab(t: Topology, c: Sequence[int], req: QosRequirement) -> float:
    """Smallest available bandwidth over the path's links."""
    return min(available_bandwidth(t.link(u, w), req) for u, w in zip(c, c[1:]))


def hop_count(c: Sequence[int]) -> int:
    """Nodes visited, endpoints included: ``(0, 3, 7, 9)`` counts 4."""
    return len(c)

"""Per-link QoS admission: the available-bandwidth rule plus delay, jitter and
loss bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleError
from .topology import LinkMetrics, Topology


@dataclass(frozen=True)
class QosRequirement:
    required_bandwidth: float = 0.0
    max_delay: float = math.inf
    max_jitter: float = math.inf
    max_loss: float = 1.0

    def __post_init__(self):
        if math.isnan(self.required_bandwidth) or self.required_bandwidth < 0:
            raise ValueError("required_bandwidth must be non-negative")
        for name in ("max_delay", "max_jitter", "max_loss"):
            value = getattr(self, name)
            if math.isnan(value) or value < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_loss > 1:
            raise ValueError("max_loss must be at most 1")

    def scaled(self, factor: float) -> "QosRequirement":
        return QosRequirement(self.required_bandwidth * factor, self.max_delay, self.max_jitter, self.max_loss)


def available_bandwidth(link: LinkMetrics, req: QosRequirement) -> float:
    """Link utility minus the flow's demand; the link is usable only when this is > 0."""
    return link.link_utility - req.required_bandwidth


def link_admissible(link: LinkMetrics, req: QosRequirement) -> bool:
    return (
        available_bandwidth(link, req) > 0
        and link.delay <= req.max_delay
        and link.jitter <= req.max_jitter
        and link.loss <= req.max_loss
    )


def admissible_subgraph(t: Topology, req: QosRequirement) -> Topology:
    """Restrict ``t`` to links that pass every bound and carry Ab > 0.

    Nodes keep their ids; a node whose links all fail simply becomes isolated.
    """
    kept = {key: m for key, m in t.edges.items() if link_admissible(m, req)}
    sub = Topology(t.node_count, kept, t.source, t.destination)
    if not sub.endpoints_connected():
        raise InfeasibleError(
            f"no admissible route from {t.source} to {t.destination}: links need "
            f"available bandwidth Ab = utility - demand > 0 (demand {req.required_bandwidth:g}) "
            "and must meet the delay/jitter/loss bounds"
        )
    return sub

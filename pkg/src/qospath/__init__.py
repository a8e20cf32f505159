"""QoS-constrained path selection with genetic and annealing optimizers."""

import logging

from .encoding import bottleneck_ab, hop_count, is_valid, path_text, random_path
from .errors import (
    DegeneratePopulationError,
    InfeasibleError,
    NoFeasiblePathError,
    OracleSizeError,
    QosPathError,
    TopologyParseError,
    TopologyValidationError,
)
from .ga import GaConfig, fitness_table, final_path_selection, run_ga
from .oracle import enumerate_paths, exact_optimum
from .qos import QosRequirement, admissible_subgraph, available_bandwidth
from .sa import SaConfig, anneal, run_sa
from .topology import LinkMetrics, Topology, load_topology, random_topology, serialize_topology

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

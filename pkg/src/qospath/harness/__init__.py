"""Experiment runner and command-line front end."""

from .compare import ComparisonReport, compare, compare_topology
from .config import ExperimentConfig, parse_config

"""Experiment config files.

One stanza per line, ``key=value`` pairs after the stanza name::

    topology path=ten_node.topo
    topology random nodes=10 edge_probability=0.35 seed=0 count=50
    qos demand=20 max_delay=9 max_jitter=4.5 max_loss=0.045
    ga population_size=5 max_generations=8
    sa initial_temperature=1000 stop_temperature=50 inner_iterations=2 cooling_factor=0.2 stall_limit=5
    trials 100
    seed 42
    budgets 1 2 3 5 8 13

Relative topology paths resolve against the config file's directory.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import InfeasibleError, QosPathError
from ..ga import GaConfig
from ..qos import QosRequirement, admissible_subgraph
from ..sa import SaConfig
from ..topology import DEFAULT_METRIC_RANGES, Topology, load_topology, random_topology

DEFAULT_BUDGETS = (1, 2, 3, 5, 8, 13)


class ConfigError(QosPathError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    nodes: int = 10
    edge_probability: float = 0.35
    seed: int = 0
    count: int = 1
    metric_ranges: dict = field(default_factory=dict)

    def generate(self, index: int = 0) -> Topology:
        return random_topology(self.nodes, self.edge_probability, self.metric_ranges or None, self.seed + index)


@dataclass(frozen=True)
class ExperimentConfig:
    topology_path: Path | None = None
    generator: GeneratorSpec | None = None
    qos: QosRequirement = QosRequirement()
    ga: GaConfig = GaConfig()
    sa: SaConfig = SaConfig()
    trial_count: int = 100
    seed_base: int = 0
    budgets: tuple[int, ...] = DEFAULT_BUDGETS

    def __post_init__(self):
        if self.trial_count < 1:
            raise ConfigError("trials must be at least 1")
        if not self.budgets or any(b < 1 for b in self.budgets):
            raise ConfigError("budgets must be positive integers")

    def load_topologies(self) -> list[Topology]:
        """Topologies named by the config.

        A generator with ``count=K`` yields the first K seeds, starting at its
        ``seed``, whose graph admits a route under the QoS requirement.
        """
        if self.topology_path is not None:
            return [load_topology(Path(self.topology_path).read_text())]
        if self.generator is None:
            raise ConfigError("no topology given: use --topology or a 'topology' stanza")
        if self.generator.count == 1:
            return [self.generator.generate()]
        found = []
        index = 0
        while len(found) < self.generator.count:
            if index > 100 * self.generator.count:
                raise ConfigError("generator produced too few feasible topologies")
            t = self.generator.generate(index)
            index += 1
            try:
                admissible_subgraph(t, self.qos)
            except InfeasibleError:
                continue
            found.append(t)
        return found

    def ga_config(self, seed: int | None = None, **changes) -> GaConfig:
        """GA settings with the run seed filled in (``seed_base`` by default)."""
        seed = self.seed_base if seed is None else seed
        return dataclasses.replace(self.ga, seed=seed, **changes)

    def sa_config(self, seed: int | None = None) -> SaConfig:
        seed = self.seed_base if seed is None else seed
        return dataclasses.replace(self.sa, seed=seed)


_QOS_KEYS = {"demand": "required_bandwidth", "max_delay": "max_delay", "max_jitter": "max_jitter", "max_loss": "max_loss"}


def _pairs(tokens, lineno):
    out = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value, got {token!r}")
        out[key] = value
    return out


def _typed(cls, values, lineno):
    kinds = {f.name: f.type for f in dataclasses.fields(cls)}
    out = {}
    for key, raw in values.items():
        if key not in kinds:
            raise ConfigError(f"line {lineno}: unknown field {key!r}")
        try:
            out[key] = int(raw) if kinds[key] == "int" else float(raw)
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value {raw!r} for {key}") from None
    return out


def _range(raw, lineno, name):
    lo, sep, hi = raw.partition(":")
    try:
        return (float(lo), float(hi))
    except ValueError:
        raise ConfigError(f"line {lineno}: {name} range must read lo:hi") from None


def parse_config(text: str, base_dir: Path | None = None) -> ExperimentConfig:
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        stanza, *rest = line.split()
        try:
            if stanza == "topology":
                if rest and rest[0] == "random":
                    values = _pairs(rest[1:], lineno)
                    ranges = {name: _range(values.pop(name), lineno, name) for name in list(values) if name in DEFAULT_METRIC_RANGES}
                    spec = _typed(GeneratorSpec, values, lineno)
                    fields["generator"] = GeneratorSpec(metric_ranges=ranges, **spec)
                else:
                    values = _pairs(rest, lineno)
                    if set(values) != {"path"}:
                        raise ConfigError(f"line {lineno}: topology needs path=<file> or 'random ...'")
                    path = Path(values["path"])
                    if not path.is_absolute() and base_dir is not None:
                        path = base_dir / path
                    fields["topology_path"] = path
            elif stanza == "qos":
                values = _pairs(rest, lineno)
                unknown = set(values) - set(_QOS_KEYS)
                if unknown:
                    raise ConfigError(f"line {lineno}: unknown qos fields {sorted(unknown)}")
                fields["qos"] = QosRequirement(**{_QOS_KEYS[k]: float(v) for k, v in values.items()})
            elif stanza in ("ga", "sa"):
                cls = GaConfig if stanza == "ga" else SaConfig
                values = _typed(cls, _pairs(rest, lineno), lineno)
                if "seed" in values:
                    raise ConfigError(f"line {lineno}: set seeds with the 'seed' stanza")
                fields[stanza] = cls(**values)
            elif stanza == "trials":
                fields["trial_count"] = int(rest[0])
            elif stanza == "seed":
                fields["seed_base"] = int(rest[0])
            elif stanza == "budgets":
                fields["budgets"] = tuple(int(v) for v in rest)
            else:
                raise ConfigError(f"line {lineno}: unknown stanza {stanza!r}")
        except (ValueError, IndexError) as exc:
            raise ConfigError(f"line {lineno}: {exc or 'missing value'}") from None
    return ExperimentConfig(**fields)

"""Network graph model, the line-oriented topology file format, and a seeded
random topology generator.

A topology file looks like::

    # comment
    nodes 4 source 0 dest 3
    edge 0 1 utility=10 delay=1 jitter=0 loss=0
    edge 1 3 utility=7.5 delay=2 jitter=0.1 loss=0.01
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import TopologyParseError, TopologyValidationError

METRIC_FIELDS = ("utility", "delay", "jitter", "loss")

DEFAULT_METRIC_RANGES = {
    "utility": (10.0, 100.0),
    "delay": (1.0, 10.0),
    "jitter": (0.0, 5.0),
    "loss": (0.0, 0.05),
}

# decimals kept when drawing random metrics, so generated files stay readable
_METRIC_DECIMALS = {"utility": 2, "delay": 2, "jitter": 2, "loss": 4}


@dataclass(frozen=True)
class LinkMetrics:
    link_utility: float
    delay: float = 0.0
    jitter: float = 0.0
    loss: float = 0.0

    def __post_init__(self):
        for name in ("link_utility", "delay", "jitter", "loss"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise TopologyValidationError(f"{name} must be finite and non-negative, got {value!r}")
        if self.loss > 1:
            raise TopologyValidationError(f"loss must be at most 1, got {self.loss!r}")

    def scaled(self, factor: float) -> "LinkMetrics":
        """Copy with the link utility multiplied by ``factor``."""
        return LinkMetrics(self.link_utility * factor, self.delay, self.jitter, self.loss)


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Topology:
    """Immutable undirected graph with per-link QoS metrics.

    ``edges`` maps an ordered endpoint pair ``(u, v)`` with ``u < v`` to its
    metrics. Use :func:`build_topology` to construct a validated instance.
    """

    node_count: int
    edges: Mapping[tuple[int, int], LinkMetrics]
    source: int
    destination: int
    _adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ordered = {_key(u, v): m for (u, v), m in sorted(self.edges.items(), key=lambda kv: _key(*kv[0]))}
        object.__setattr__(self, "edges", ordered)
        adjacency = [[] for _ in range(self.node_count)]
        for (u, v), metrics in ordered.items():
            adjacency[u].append((v, metrics))
            adjacency[v].append((u, metrics))
        for entries in adjacency:
            entries.sort(key=lambda e: e[0])
        object.__setattr__(self, "_adjacency", tuple(tuple(entries) for entries in adjacency))

    def neighbors(self, v: int) -> list[tuple[int, LinkMetrics]]:
        return list(self._adjacency[v])

    def neighbor_ids(self, v: int) -> tuple[int, ...]:
        return tuple(w for w, _ in self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _key(u, v) in self.edges

    def link(self, u: int, v: int) -> LinkMetrics:
        return self.edges[_key(u, v)]

    def adjacency_matrix(self) -> np.ndarray:
        adj = np.zeros((self.node_count, self.node_count), dtype=np.bool_)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        return adj

    def utility_matrix(self) -> np.ndarray:
        """Symmetric link-utility matrix, NaN where there is no link."""
        util = np.full((self.node_count, self.node_count), np.nan)
        for (u, v), m in self.edges.items():
            util[u, v] = util[v, u] = m.link_utility
        return util

    def reachable(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w, _ in self._adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def is_connected(self) -> bool:
        return len(self.reachable(0)) == self.node_count

    def endpoints_connected(self) -> bool:
        return self.destination in self.reachable(self.source)

    def scaled(self, factor: float) -> "Topology":
        return Topology(
            self.node_count,
            {k: m.scaled(factor) for k, m in self.edges.items()},
            self.source,
            self.destination,
        )


def neighbors(t: Topology, v: int) -> list[tuple[int, LinkMetrics]]:
    """Adjacent nodes of ``v`` with their link metrics, ascending by node id."""
    return t.neighbors(v)


def build_topology(
    node_count: int,
    edges: Iterable[tuple[int, int, LinkMetrics]],
    source: int,
    destination: int,
    *,
    require_connected: bool = True,
) -> Topology:
    if node_count < 2:
        raise TopologyValidationError(f"need at least 2 nodes, got {node_count}")
    for name, node in (("source", source), ("dest", destination)):
        if not 0 <= node < node_count:
            raise TopologyValidationError(f"bad {name}: node {node} not in 0..{node_count - 1}")
    if source == destination:
        raise TopologyValidationError("bad source/dest: source equals destination")
    table: dict[tuple[int, int], LinkMetrics] = {}
    for u, v, metrics in edges:
        if u == v:
            raise TopologyValidationError(f"self-loop on node {u}")
        for node in (u, v):
            if not 0 <= node < node_count:
                raise TopologyValidationError(f"edge endpoint {node} not in 0..{node_count - 1}")
        key = _key(u, v)
        if key in table:
            raise TopologyValidationError(f"duplicate edge {key[0]}-{key[1]}")
        table[key] = metrics
    topo = Topology(node_count, table, source, destination)
    if require_connected and not topo.is_connected():
        raise TopologyValidationError("graph is disconnected")
    return topo


def _parse_int(token: str, lineno: int, name: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise TopologyParseError(f"expected integer, got {token!r}", lineno, name) from None


def load_topology(text: str) -> Topology:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "nodes":
            if header is not None:
                raise TopologyParseError("duplicate header", lineno)
            if len(tokens) != 6 or tokens[2] != "source" or tokens[4] != "dest":
                raise TopologyParseError("header must read 'nodes N source S dest D'", lineno)
            header = (
                _parse_int(tokens[1], lineno, "nodes"),
                _parse_int(tokens[3], lineno, "source"),
                _parse_int(tokens[5], lineno, "dest"),
            )
        elif tokens[0] == "edge":
            if header is None:
                raise TopologyParseError("edge before header", lineno)
            if len(tokens) != 7:
                raise TopologyParseError("edge line must read 'edge U V utility=.. delay=.. jitter=.. loss=..'", lineno)
            u = _parse_int(tokens[1], lineno, "U")
            v = _parse_int(tokens[2], lineno, "V")
            values = {}
            for token in tokens[3:]:
                name, sep, value = token.partition("=")
                if not sep or name not in METRIC_FIELDS:
                    raise TopologyParseError(f"unknown field {token!r}", lineno, name)
                if name in values:
                    raise TopologyParseError("repeated field", lineno, name)
                try:
                    values[name] = float(value)
                except ValueError:
                    raise TopologyParseError(f"expected number, got {value!r}", lineno, name) from None
            try:
                metrics = LinkMetrics(values["utility"], values["delay"], values["jitter"], values["loss"])
            except TopologyValidationError as exc:
                raise TopologyParseError(str(exc), lineno) from None
            edges.append((u, v, metrics))
        else:
            raise TopologyParseError(f"unknown directive {tokens[0]!r}", lineno)
    if header is None:
        raise TopologyParseError("missing 'nodes N source S dest D' header")
    node_count, source, destination = header
    return build_topology(node_count, edges, source, destination)


def format_number(value: float) -> str:
    """Shortest text that parses back to exactly ``value``."""
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def serialize_topology(t: Topology) -> str:
    lines = [f"nodes {t.node_count} source {t.source} dest {t.destination}"]
    for (u, v), m in t.edges.items():
        lines.append(
            f"edge {u} {v} utility={format_number(m.link_utility)} delay={format_number(m.delay)} "
            f"jitter={format_number(m.jitter)} loss={format_number(m.loss)}"
        )
    return "\n".join(lines) + "\n"


def random_topology(
    node_count: int,
    edge_probability: float,
    metric_ranges: Mapping[str, tuple[float, float]] | None = None,
    seed: int = 0,
) -> Topology:
    """Seeded connected random graph with source 0 and destination ``node_count - 1``.

    A random spanning tree is laid down first so the result is always
    connected; every remaining pair is then joined with ``edge_probability``.
    """
    if node_count < 2:
        raise ValueError("node_count must be at least 2")
    if not 0 < edge_probability <= 1:
        raise ValueError("edge_probability must be in (0, 1]")
    ranges = dict(DEFAULT_METRIC_RANGES)
    if metric_ranges:
        unknown = set(metric_ranges) - set(ranges)
        if unknown:
            raise ValueError(f"unknown metrics {sorted(unknown)}")
        ranges.update(metric_ranges)
    rng = np.random.default_rng(seed)

    order = rng.permutation(node_count)
    pairs = set()
    for i in range(1, node_count):
        parent = order[rng.integers(i)]
        pairs.add(_key(int(order[i]), int(parent)))
    for u in range(node_count):
        for v in range(u + 1, node_count):
            if (u, v) not in pairs and rng.random() < edge_probability:
                pairs.add((u, v))

    edges = []
    for u, v in sorted(pairs):
        drawn = {}
        for name in METRIC_FIELDS:
            lo, hi = ranges[name]
            drawn[name] = round(float(rng.uniform(lo, hi)), _METRIC_DECIMALS[name])
        edges.append((u, v, LinkMetrics(drawn["utility"], drawn["delay"], drawn["jitter"], drawn["loss"])))
    return build_topology(node_count, edges, 0, node_count - 1)

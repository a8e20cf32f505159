import pytest
from hypothesis import given, settings, strategies as st

from qospath.errors import TopologyParseError, TopologyValidationError
from qospath.topology import (
    LinkMetrics,
    build_topology,
    load_topology,
    neighbors,
    random_topology,
    serialize_topology,
)

from helpers import FIXTURES, complete, path_graph

TWO_NODE = "nodes 2 source 0 dest 1\nedge 0 1 utility=10 delay=1 jitter=0 loss=0\n"


def test_load_smallest_graph():
    t = load_topology(TWO_NODE)
    assert t.node_count == 2
    assert list(t.edges) == [(0, 1)]
    assert t.link(0, 1) == LinkMetrics(10, 1, 0, 0)


def test_self_loop_rejected():
    text = TWO_NODE + "edge 0 0 utility=10 delay=1 jitter=0 loss=0\n"
    with pytest.raises(TopologyValidationError, match="self-loop"):
        load_topology(text)


def test_path_graph_is_valid():
    text = (
        "nodes 3 source 0 dest 2\n"
        "edge 0 1 utility=1 delay=1 jitter=0 loss=0\n"
        "edge 1 2 utility=1 delay=1 jitter=0 loss=0\n"
    )
    t = load_topology(text)
    assert t.is_connected()
    assert len(t.edges) == 2


@pytest.mark.parametrize(
    "text, message",
    [
        ("nodes 3 source 0 dest 2\nedge 0 1 utility=1 delay=1 jitter=0 loss=0\n", "disconnected"),
        (TWO_NODE + "edge 1 0 utility=3 delay=1 jitter=0 loss=0\n", "duplicate"),
        ("nodes 2 source 0 dest 0\nedge 0 1 utility=1 delay=1 jitter=0 loss=0\n", "source"),
        ("nodes 2 source 0 dest 5\nedge 0 1 utility=1 delay=1 jitter=0 loss=0\n", "dest"),
    ],
)
def test_validation_errors(text, message):
    with pytest.raises(TopologyValidationError, match=message):
        load_topology(text)


@pytest.mark.parametrize(
    "text, line, field",
    [
        ("nodes two source 0 dest 1\n", 1, "nodes"),
        ("# c\nnodes 2 source 0 dest 1\nedge 0 1 utility=x delay=1 jitter=0 loss=0\n", 3, "utility"),
        ("nodes 2 source 0 dest 1\nedge 0 1 utility=1 delay=1 jitter=0 speed=3\n", 2, "speed"),
    ],
)
def test_parse_errors_carry_location(text, line, field):
    with pytest.raises(TopologyParseError) as info:
        load_topology(text)
    assert info.value.line == line
    assert info.value.field == field


def test_parse_errors_without_field():
    with pytest.raises(TopologyParseError, match="header"):
        load_topology("edge 0 1 utility=1 delay=1 jitter=0 loss=0\n")
    with pytest.raises(TopologyParseError, match="loss"):
        load_topology("nodes 2 source 0 dest 1\nedge 0 1 utility=1 delay=1 jitter=0 loss=2\n")


def test_metrics_preserved_exactly():
    text = "nodes 2 source 0 dest 1\nedge 0 1 utility=12.345 delay=0.1 jitter=1e-3 loss=0.3\n"
    m = load_topology(text).link(0, 1)
    assert (m.link_utility, m.delay, m.jitter, m.loss) == (12.345, 0.1, 0.001, 0.3)


def test_neighbors_sorted():
    t = path_graph()
    assert [v for v, _ in neighbors(t, 1)] == [0, 2]
    assert neighbors(t, 1)[0][1] == t.link(0, 1)
    tri = complete(3)
    assert [v for v, _ in neighbors(tri, 0)] == [1, 2]


def test_neighbors_empty_on_unvalidated_builder():
    t = build_topology(3, [(0, 1, LinkMetrics(1))], 0, 1, require_connected=False)
    assert neighbors(t, 2) == []


def test_random_two_nodes_forced_edge():
    t = random_topology(2, 0.5, seed=7)
    assert list(t.edges) == [(0, 1)]


def test_random_deterministic():
    a = serialize_topology(random_topology(10, 0.3, seed=42))
    b = serialize_topology(random_topology(10, 0.3, seed=42))
    assert a == b
    assert a != serialize_topology(random_topology(10, 0.3, seed=43))


def test_random_complete_graph():
    assert len(random_topology(10, 1.0, seed=1).edges) == 45


def test_random_metric_ranges():
    t = random_topology(8, 0.5, {"utility": (5, 6), "loss": (0.1, 0.2)}, seed=3)
    for m in t.edges.values():
        assert 5 <= m.link_utility <= 6
        assert 0.1 <= m.loss <= 0.2


def test_random_sweep_always_loads():
    for seed in range(1000):
        t = random_topology(10, 0.2, seed=seed)
        assert load_topology(serialize_topology(t)) == t


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 12), p=st.floats(0.01, 1.0), seed=st.integers(0, 2**32 - 1))
def test_round_trip_and_symmetry(n, p, seed):
    t = random_topology(n, p, seed=seed)
    assert load_topology(serialize_topology(t)) == t
    for v in range(n):
        for u in t.neighbor_ids(v):
            assert v in t.neighbor_ids(u)


def test_fixture_files_load():
    for path in sorted(FIXTURES.glob("*.topo")):
        t = load_topology(path.read_text())
        assert load_topology(serialize_topology(t)) == t

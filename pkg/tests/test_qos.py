import math

import pytest
from hypothesis import given, settings, strategies as st

from qospath.errors import InfeasibleError
from qospath.qos import QosRequirement, admissible_subgraph, available_bandwidth, link_admissible
from qospath.topology import LinkMetrics, random_topology

from helpers import graph, path_graph


@pytest.mark.parametrize("utility, demand, expected", [(10, 4, 6), (5, 5, 0), (3, 7, -4)])
def test_available_bandwidth(utility, demand, expected):
    assert available_bandwidth(LinkMetrics(utility), QosRequirement(demand)) == expected


def test_generous_bounds_keep_everything():
    t = path_graph()
    sub = admissible_subgraph(t, QosRequirement(4, 100, 100, 1))
    assert sub.edges == t.edges


def test_zero_available_bandwidth_is_excluded():
    with pytest.raises(InfeasibleError, match="Ab"):
        admissible_subgraph(path_graph(), QosRequirement(10))


def test_loss_bound_drops_direct_link():
    t = graph(3, [(0, 1, 10), (1, 2, 10)])
    lossy = graph(3, [(0, 2, 10)], loss=0.5)
    t = type(t)(3, {**t.edges, **lossy.edges}, 0, 2)
    sub = admissible_subgraph(t, QosRequirement(1, 10, 10, 0.1))
    assert set(sub.edges) == {(0, 1), (1, 2)}
    assert (sub.source, sub.destination, sub.node_count) == (0, 2, 3)


def test_requirement_validation():
    with pytest.raises(ValueError):
        QosRequirement(-1)
    with pytest.raises(ValueError):
        QosRequirement(1, max_loss=2)
    assert QosRequirement().max_delay == math.inf


bounds = st.tuples(st.floats(0, 120), st.floats(0, 12), st.floats(0, 6), st.floats(0, 0.06))


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10_000), b=bounds, which=st.integers(0, 3), slack=st.floats(0, 50))
def test_filter_properties(seed, b, which, slack):
    t = random_topology(9, 0.4, seed=seed)
    req = QosRequirement(*b)
    kept = {k for k, m in t.edges.items() if link_admissible(m, req)}
    # every kept edge satisfies all bounds; kept set is a subset
    for k in kept:
        m = t.edges[k]
        assert available_bandwidth(m, req) > 0
        assert m.delay <= req.max_delay and m.jitter <= req.max_jitter and m.loss <= req.max_loss
    # loosening one bound never removes an edge
    loose = list(b)
    loose[which] = max(0.0, loose[which] - slack) if which == 0 else loose[which] + slack
    loose[3] = min(loose[3], 1.0)
    req2 = QosRequirement(*loose)
    kept2 = {k for k, m in t.edges.items() if link_admissible(m, req2)}
    assert kept <= kept2
    try:
        sub = admissible_subgraph(t, req)
    except InfeasibleError:
        return
    assert set(sub.edges) == kept
    assert set(sub.edges) <= set(t.edges)

import math

import numpy as np
import pytest

from qospath.encoding import is_valid
from qospath.errors import NoFeasiblePathError
from qospath.qos import QosRequirement, admissible_subgraph
from qospath.sa import Objective, SaConfig, accept, anneal, delta, neighbor, run_sa, sa_objective
from qospath.topology import random_topology

from helpers import brute_force_paths, fixture, graph, path_graph, triangle

FREE = QosRequirement()
TEN_REQ = QosRequirement(10, 5, 2, 0.1)


def test_defaults_match_table():
    cfg = SaConfig()
    assert (cfg.initial_temperature, cfg.stop_temperature, cfg.inner_iterations, cfg.cooling_factor, cfg.stall_limit) == (
        1000,
        50,
        2,
        0.2,
        5,
    )
    with pytest.raises(ValueError):
        SaConfig(initial_temperature=10, stop_temperature=50)
    with pytest.raises(ValueError):
        SaConfig(cooling_factor=1.0)


def test_objective_values():
    t = triangle()
    pool = [(0, 1, 2), (0, 2)]
    assert sa_objective((0, 1, 2), [(0, 1, 2)], t, FREE) == 1.0
    # hand computation: widths 3 and 2 over a pool total of 5
    assert sa_objective((0, 1, 2), pool, t, FREE) == pytest.approx(3 / 5)
    assert sa_objective((0, 2), pool, t, FREE) == pytest.approx(2 / 5)


def test_objective_infeasible_member():
    t = graph(4, [(0, 1, 10), (1, 3, 10), (0, 2, 1), (2, 3, 10)])
    pool = [(0, 1, 3), (0, 2, 3)]
    assert sa_objective((0, 2, 3), pool, t, QosRequirement(5)) == 0
    with pytest.raises(NoFeasiblePathError):
        sa_objective((0, 2, 3), [(0, 2, 3)], t, QosRequirement(5))


def test_delta_signs():
    t = triangle()
    obj = Objective.from_pool([(0, 1, 2), (0, 2)], t, FREE)
    assert delta((0, 2), (0, 2), obj) == 0
    assert delta((0, 2), (0, 1, 2), obj) == pytest.approx(0.2)
    assert delta((0, 1, 2), (0, 2), obj) == pytest.approx(-0.2)


def test_accept_improving_and_neutral():
    rng = np.random.default_rng(0)
    assert accept(0.2, 1e-9, rng)
    assert all(accept(0.0, 5.0, rng) for _ in range(1000))


@pytest.mark.parametrize("dlt, temp", [(-0.2, 1000), (-0.2, 40), (-50, 40), (-5, 2)])
def test_accept_frequency(dlt, temp):
    rng = np.random.default_rng(int(-dlt * 1000 + temp))
    n = 100_000
    p = math.exp(dlt / temp)
    hits = sum(accept(dlt, temp, rng) for _ in range(n))
    assert abs(hits / n - p) <= 3 * math.sqrt(p * (1 - p) / n) + 1e-12


def test_neighbor():
    assert neighbor(path_graph(), np.random.default_rng(1)) == (0, 1, 2)
    t = triangle()
    assert {neighbor(t, np.random.default_rng(s)) for s in range(1000)} == brute_force_paths(t)
    assert neighbor(t, np.random.default_rng(77)) == neighbor(t, np.random.default_rng(77))


def test_temperature_schedule():
    result = anneal(fixture("ten_node.topo"), TEN_REQ, SaConfig(seed=1))
    assert result.temperatures == [1000, 200, 40]
    assert [r.temperature for r in result.trace] == [1000, 1000, 200, 200]


def test_schedule_is_geometric():
    cfg = SaConfig(initial_temperature=900, stop_temperature=1, cooling_factor=0.5, stall_limit=1000, seed=3)
    result = anneal(fixture("ten_node.topo"), TEN_REQ, cfg)
    expected = [900.0]
    while expected[-1] > 1:
        expected.append(expected[-1] * 0.5)
    assert result.temperatures == expected


def test_unique_path_stalls_out():
    cfg = SaConfig(initial_temperature=1e6, stop_temperature=1, cooling_factor=0.99, seed=0)
    best, trace = run_sa(path_graph(), FREE, cfg)
    assert best == (0, 1, 2)
    # neutral moves are accepted, so the stall counter is reset every step
    assert all(row.accepted for row in trace)


def test_stall_counter_runs_down():
    # only worsening moves are rejected; make every move worsening
    t = triangle()
    cfg = SaConfig(initial_temperature=1e-3, stop_temperature=1e-9, cooling_factor=0.9, stall_limit=3, seed=0)
    for seed in range(30):
        res = anneal(t, FREE, SaConfig(**{**cfg.__dict__, "seed": seed}))
        for row in res.trace:
            assert 0 <= row.stall_remaining <= 3
        if res.trace and not res.trace[-1].accepted:
            assert res.trace[-1].stall_remaining in (0, *range(1, 4))


def test_deterministic_trace():
    t = random_topology(10, 0.35, seed=4)
    a = anneal(t, QosRequirement(20), SaConfig(seed=9))
    b = anneal(t, QosRequirement(20), SaConfig(seed=9))
    assert a.trace == b.trace and a.best == b.best


def test_trace_properties():
    for seed in range(200):
        t = random_topology(10, 0.35, seed=seed % 20)
        req = QosRequirement(20)
        res = anneal(t, req, SaConfig(seed=seed, initial_temperature=5, stop_temperature=1e-3))
        work = admissible_subgraph(t, req)
        best_so_far = res.objective(res.history[0])
        current = res.history[0]
        for row in res.trace:
            assert is_valid(work, row.current) and is_valid(work, row.candidate)
            if row.accepted and row.delta > 0:
                assert res.objective(row.candidate) > res.objective(current)
            if row.accepted:
                current = row.candidate
                best_so_far = max(best_so_far, res.objective(current))
        assert res.objective(res.best) == best_so_far
        assert res.objective(res.best) >= res.objective(res.final_state)


def test_capped_run_is_prefix():
    t = random_topology(10, 0.35, seed=6)
    cfg = SaConfig(seed=2, stop_temperature=0.01)
    full = anneal(t, QosRequirement(20), cfg)
    capped = anneal(t, QosRequirement(20), cfg, max_evaluations=3)
    assert capped.trace == full.trace[:3]

"""Independent oracles and fixture loaders for the test suite."""

from itertools import permutations
from pathlib import Path

from qospath.topology import LinkMetrics, build_topology, load_topology

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name):
    return load_topology((FIXTURES / name).read_text())


def brute_force_paths(t):
    """Every simple source-destination path, by trying each ordered subset of
    intermediate nodes. Exponential, and deliberately unrelated to DFS."""
    middle = [v for v in range(t.node_count) if v not in (t.source, t.destination)]
    found = set()
    for k in range(len(middle) + 1):
        for inner in permutations(middle, k):
            path = (t.source, *inner, t.destination)
            if all(t.has_edge(u, w) for u, w in zip(path, path[1:])):
                found.add(path)
    return found


def graph(n, edges, source=0, dest=None, **metrics):
    """Build a topology from ``(u, v, utility)`` triples with uniform other metrics."""
    dest = n - 1 if dest is None else dest
    full = [(u, v, LinkMetrics(util, **metrics)) for u, v, util in edges]
    return build_topology(n, full, source, dest, require_connected=False)


def path_graph():
    return graph(3, [(0, 1, 10), (1, 2, 10)])


def triangle():
    """S=0, A=1, D=2 with Ab(S-A)=5, Ab(A-D)=3, Ab(S-D)=2 at zero demand."""
    return graph(3, [(0, 1, 5), (1, 2, 3), (0, 2, 2)])


def complete(n, utility=10.0):
    return graph(n, [(u, v, utility) for u in range(n) for v in range(u + 1, n)])

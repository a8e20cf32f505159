"""Time the oracle kernels under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from qospath import _kernels
from qospath.topology import random_topology


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # compile outside the timed region
    warm = random_topology(4, 1.0, seed=0)
    p, l = _kernels.enumerate_paths_numba(warm.adjacency_matrix(), 0, 3)
    _kernels.path_bottlenecks_numba(p, l, warm.utility_matrix(), 0.0)

    print(f"{'graph':<22}{'paths':>10}{'enum numpy':>12}{'enum numba':>12}{'btl numpy':>12}{'btl numba':>12}")
    for nodes, prob in [(10, 0.35), (10, 0.7), (11, 1.0), (12, 0.6), (12, 0.8)]:
        t = random_topology(nodes, prob, seed=1)
        adj, util = t.adjacency_matrix(), t.utility_matrix()
        src, dst = t.source, t.destination
        t_np, (paths, lengths) = best_of(lambda: _kernels.enumerate_paths_numpy(adj, src, dst), args.repeat)
        t_nb, (paths_nb, _) = best_of(lambda: _kernels.enumerate_paths_numba(adj, src, dst), args.repeat)
        assert np.array_equal(paths, paths_nb)
        b_np, a = best_of(lambda: _kernels.path_bottlenecks_numpy(paths, lengths, util, 20.0), args.repeat)
        b_nb, b = best_of(lambda: _kernels.path_bottlenecks_numba(paths, lengths, util, 20.0), args.repeat)
        assert np.array_equal(a, b)
        label = f"n={nodes} p={prob}"
        print(f"{label:<22}{len(paths):>10}{t_np:>11.4f}s{t_nb:>11.4f}s{b_np:>11.4f}s{b_nb:>11.4f}s")


if __name__ == "__main__":
    main()

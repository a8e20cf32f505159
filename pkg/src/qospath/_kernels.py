"""Hot loops behind the exhaustive oracle.

Each kernel has a numba ``@njit`` version and a plain numpy/Python version
with identical output. The numba versions are used when numba imports and
``QOSPATH_DISABLE_NUMBA`` is unset (or ``0``).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba ships with the dev environment
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("QOSPATH_DISABLE_NUMBA", "0") in ("", "0")
BACKEND = "numba" if USE_NUMBA else "numpy"


def enumerate_paths_numpy(adj: np.ndarray, src: int, dst: int) -> tuple[np.ndarray, np.ndarray]:
    """All simple ``src``-``dst`` paths in depth-first, ascending-neighbour order.

    Returns ``(paths, lengths)``: rows of ``paths`` are padded with -1.
    """
    n = adj.shape[0]
    neighbours = [np.flatnonzero(adj[u]) for u in range(n)]
    found = []
    path = [src]
    visited = np.zeros(n, dtype=np.bool_)
    visited[src] = True

    def walk(u):
        if u == dst:
            found.append(list(path))
            return
        for v in neighbours[u]:
            if not visited[v]:
                visited[v] = True
                path.append(int(v))
                walk(v)
                path.pop()
                visited[v] = False

    walk(src)
    out = np.full((len(found), n), -1, dtype=np.int64)
    lengths = np.zeros(len(found), dtype=np.int64)
    for i, p in enumerate(found):
        out[i, : len(p)] = p
        lengths[i] = len(p)
    return out, lengths


def path_bottlenecks_numpy(paths: np.ndarray, lengths: np.ndarray, util: np.ndarray, demand: float) -> np.ndarray:
    """Minimum of ``util - demand`` over each padded path's links."""
    if len(paths) == 0:
        return np.zeros(0)
    heads = paths[:, :-1]
    tails = paths[:, 1:]
    live = np.arange(heads.shape[1])[None, :] < (lengths[:, None] - 1)
    ab = np.where(live, util[np.where(live, heads, 0), np.where(live, tails, 0)] - demand, np.inf)
    return ab.min(axis=1)


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def enumerate_paths_numba(adj, src, dst):
        n = adj.shape[0]
        cap = 64
        out = np.full((cap, n), -1, dtype=np.int64)
        lengths = np.zeros(cap, dtype=np.int64)
        count = 0
        path = np.empty(n, dtype=np.int64)
        next_nb = np.zeros(n, dtype=np.int64)
        visited = np.zeros(n, dtype=np.bool_)
        depth = 0
        path[0] = src
        visited[src] = True
        while depth >= 0:
            u = path[depth]
            if u == dst:
                if count == cap:
                    cap *= 2
                    grown = np.full((cap, n), -1, dtype=np.int64)
                    grown[:count] = out[:count]
                    out = grown
                    grown_len = np.zeros(cap, dtype=np.int64)
                    grown_len[:count] = lengths[:count]
                    lengths = grown_len
                out[count, : depth + 1] = path[: depth + 1]
                lengths[count] = depth + 1
                count += 1
                visited[u] = False
                depth -= 1
                continue
            advanced = False
            while next_nb[depth] < n:
                v = next_nb[depth]
                next_nb[depth] += 1
                if adj[u, v] and not visited[v]:
                    depth += 1
                    path[depth] = v
                    visited[v] = True
                    next_nb[depth] = 0
                    advanced = True
                    break
            if not advanced:
                visited[u] = False
                depth -= 1
        return out[:count].copy(), lengths[:count].copy()

    @numba.njit(cache=True)
    def path_bottlenecks_numba(paths, lengths, util, demand):
        out = np.empty(paths.shape[0])
        for i in range(paths.shape[0]):
            best = np.inf
            for k in range(lengths[i] - 1):
                ab = util[paths[i, k], paths[i, k + 1]] - demand
                if ab < best:
                    best = ab
            out[i] = best
        return out

else:  # pragma: no cover
    enumerate_paths_numba = None
    path_bottlenecks_numba = None


if USE_NUMBA:
    enumerate_simple_paths = enumerate_paths_numba
    path_bottlenecks = path_bottlenecks_numba
else:
    enumerate_simple_paths = enumerate_paths_numpy
    path_bottlenecks = path_bottlenecks_numpy

"""Compiled sum of squared edge imbalances, the hot loop of every sweep.

Only the quantity ``sum_e (n_u(e) - n_v(e))^2`` is computed here; the
reference implementation in :mod:`rszeged.indices` is kept separate and the
test suite checks the two against each other.
"""

from __future__ import annotations

from typing import Sequence

import numba
import numpy as np


@numba.njit(cache=True)
def _delta_sq_sum(n, eu, ev):
    m = eu.shape[0]
    start = np.zeros(n + 1, np.int64)
    for i in range(m):
        start[eu[i] + 1] += 1
        start[ev[i] + 1] += 1
    for i in range(n):
        start[i + 1] += start[i]
    nbr = np.empty(2 * m, np.int64)
    fill = start[:n].copy()
    for i in range(m):
        nbr[fill[eu[i]]] = ev[i]
        fill[eu[i]] += 1
        nbr[fill[ev[i]]] = eu[i]
        fill[ev[i]] += 1

    dist = np.empty((n, n), np.int64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        for j in range(n):
            dist[s, j] = -1
        dist[s, s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(start[u], start[u + 1]):
                w = nbr[k]
                if dist[s, w] < 0:
                    dist[s, w] = dist[s, u] + 1
                    queue[tail] = w
                    tail += 1
        if tail != n:
            return -1

    total = 0
    for i in range(m):
        d = 0
        for j in range(n):
            a = dist[eu[i], j]
            b = dist[ev[i], j]
            if a < b:
                d += 1
            elif b < a:
                d -= 1
        total += d * d
    return total


def delta_sq_sum(n: int, edges: Sequence[tuple[int, int]]) -> int:
    """Sum of squared imbalances over ``edges``; ``ValueError`` if disconnected."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    out = _delta_sq_sum(n, np.ascontiguousarray(e[:, 0]), np.ascontiguousarray(e[:, 1]))
    if out < 0:
        raise ValueError("graph is disconnected")
    return int(out)

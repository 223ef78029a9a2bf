"""Minimum-cost assignment on a square cost matrix (Hungarian method, O(n^3))."""

from __future__ import annotations

from typing import Sequence


def min_cost_assignment(cost: Sequence[Sequence[float]]) -> tuple[float, list[int]]:
    """Return ``(total, cols)`` where row ``i`` is assigned to column ``cols[i]``.

    Shortest augmenting path with row/column potentials.  Works for any real
    costs; integer input yields an integer total.
    """
    n = len(cost)
    if n == 0:
        return 0, []
    if any(len(row) != n for row in cost):
        raise ValueError("cost matrix must be square")
    inf = float("inf")
    # 1-based arrays; index 0 is the virtual root column
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = inf
            j1 = 0
            row = cost[i0 - 1]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    cols = [0] * n
    for j in range(1, n + 1):
        cols[match[j] - 1] = j - 1
    total = sum(cost[i][cols[i]] for i in range(n))
    return total, cols

#!/usr/bin/env python3
"""Brute-force cell-weight computation on a small cubical grid, independent
of the C++ implementation.

Cells are doubled-coordinate integer vectors (even = vertex, odd = open
interval).  sigma <= tau iff for each axis tau_i == sigma_i or (sigma_i odd
and |tau_i - sigma_i| == 1); such principal down-sets are open stars.

Weight between comparable cells: 0 when tau <= sigma, delta when
sigma <= tau.  General weight: infimum over zig-zags of comparable
consecutive cells of the summed jumps.  Enumerated here by BFS over the
"one comparability step" relation with cost 0 (down) / 1 (up), times delta.
"""

import itertools
import json
from collections import deque


def cells(window):
    axes = [range(2 * lo, 2 * hi + 1) for lo, hi in window]
    return [tuple(v) for v in itertools.product(*axes)]


def leq(s, t):
    return all(b == a or (a % 2 == 1 and abs(b - a) == 1) for a, b in zip(s, t))


def weights(window):
    cs = cells(window)
    idx = {c: i for i, c in enumerate(cs)}
    n = len(cs)
    INF = float("inf")
    w = [[INF] * n for _ in range(n)]
    for i, s in enumerate(cs):
        # 0-1 BFS: arcs i -> j with cost 0 if cs[j] <= cs[i], 1 if cs[i] <= cs[j]
        dist = [INF] * n
        dist[i] = 0
        dq = deque([i])
        while dq:
            u = dq.popleft()
            for v in range(n):
                if v == u:
                    continue
                if leq(cs[v], cs[u]):
                    c = 0
                elif leq(cs[u], cs[v]):
                    c = 1
                else:
                    continue
                if dist[u] + c < dist[v]:
                    dist[v] = dist[u] + c
                    (dq.appendleft if c == 0 else dq.append)(v)
        for j in range(n):
            w[i][j] = dist[j]
    return cs, w


def main():
    cs, w = weights([(0, 2), (0, 2)])
    idx = {c: i for i, c in enumerate(cs)}
    spots = {
        "sq11_to_sq33": w[idx[(1, 1)]][idx[(3, 3)]],
        "sq33_to_sq11": w[idx[(3, 3)]][idx[(1, 1)]],
        "v00_to_v44": w[idx[(0, 0)]][idx[(4, 4)]],
        "v00_to_v22": w[idx[(0, 0)]][idx[(2, 2)]],
        "v22_to_sq11": w[idx[(2, 2)]][idx[(1, 1)]],
        "sq11_to_v22": w[idx[(1, 1)]][idx[(2, 2)]],
        "e10_to_e30": w[idx[(1, 0)]][idx[(3, 0)]],
        "e10_to_e14": w[idx[(1, 0)]][idx[(1, 4)]],
        "v00_to_sq33": w[idx[(0, 0)]][idx[(3, 3)]],
        "sq11_to_v44": w[idx[(1, 1)]][idx[(4, 4)]],
    }
    max_w = max(max(x for x in row if x != float("inf")) for row in w)
    print(json.dumps({"spots": spots, "max_weight_multiple_of_delta": max_w,
                      "num_cells": len(cs)}, indent=2, sort_keys=True))


main()

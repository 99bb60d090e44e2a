#!/usr/bin/env python3
"""Independent component counts for Reeb-style cosheaves of combinatorial
graphs, plus the expected cycle rank of the interval-sliced reconstruction.

Graph: vertices carry rational values; edges interpolate linearly between
endpoint values.  For an open interval I = (a, b), the preimage's components
are computed with union-find over {vertices strictly inside I} plus one node
per edge whose open value span meets I; an edge node is merged with an
endpoint iff that endpoint lies strictly inside I.
"""

import json
from fractions import Fraction as Fr


class UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def components(vertices, edges, a, b):
    """vertices: {name: value}; edges: [(u, v)]; interval (a, b)."""
    nodes = [v for v, val in vertices.items() if a < val < b]
    arc_nodes = []
    for k, (u, v) in enumerate(edges):
        lo, hi = sorted((vertices[u], vertices[v]))
        if lo < b and hi > a:
            arc_nodes.append(k)
    names = {v: i for i, v in enumerate(nodes)}
    arcs = {k: len(nodes) + i for i, k in enumerate(arc_nodes)}
    uf = UF(len(nodes) + len(arc_nodes))
    for k in arc_nodes:
        u, v = edges[k]
        for end in (u, v):
            if a < vertices[end] < b:
                uf.union(arcs[k], names[end])
    roots = {uf.find(i) for i in range(len(nodes) + len(arc_nodes))}
    return len(roots)


def slice_cycle_rank(vertices, edges, delta, lo, hi):
    """Reconstruct a graph from the cosheaf sampled on the grid interval
    family and return its cycle rank E - V + C."""
    ks = []
    k = 0
    while lo + (k + 2) * delta <= hi + delta:  # cover through the top
        ks.append(k)
        k += 1

    def comps_with_labels(a, b):
        nodes = [v for v, val in vertices.items() if a < val < b]
        arc_nodes = [k for k, (u, v) in enumerate(edges)
                     if min(vertices[u], vertices[v]) < b
                     and max(vertices[u], vertices[v]) > a]
        names = {v: i for i, v in enumerate(nodes)}
        arcs = {k: len(nodes) + i for i, k in enumerate(arc_nodes)}
        uf = UF(len(nodes) + len(arc_nodes))
        for k in arc_nodes:
            u, v = edges[k]
            for end in (u, v):
                if a < vertices[end] < b:
                    uf.union(arcs[k], names[end])
        cls = {}
        for v in nodes:
            cls[("v", v)] = uf.find(names[v])
        for k in arc_nodes:
            cls[("e", k)] = uf.find(arcs[k])
        return cls

    V = 0
    slice_vertices = {}  # (k, root) -> id
    for k in ks:
        a, b = lo + k * delta, lo + (k + 2) * delta
        cls = comps_with_labels(a, b)
        for r in set(cls.values()):
            slice_vertices[(k, r)] = V
            V += 1
    E = 0
    uf = UF(V)
    edges_out = 0
    for k in ks[:-1]:
        a, b = lo + (k + 1) * delta, lo + (k + 2) * delta  # overlap interval
        cls_j = comps_with_labels(a, b)
        cls_lo = comps_with_labels(lo + k * delta, lo + (k + 2) * delta)
        cls_hi = comps_with_labels(lo + (k + 1) * delta, lo + (k + 3) * delta)
        for r in set(cls_j.values()):
            rep = next(key for key, v in cls_j.items() if v == r)
            u_id = slice_vertices[(k, cls_lo[rep])]
            w_id = slice_vertices[(k + 1, cls_hi[rep])]
            edges_out += 1
            uf.union(u_id, w_id)
    C = len({uf.find(i) for i in range(V)})
    return edges_out - V + C


def main():
    # Circle realized with bottom vertex at 0 and top vertex at h: two
    # parallel arcs.
    big = ({"lo": Fr(0), "hi": Fr(4)},
           [("lo", "hi"), ("lo", "hi")])
    small = ({"lo": Fr(0), "hi": Fr(1, 2)},
             [("lo", "hi"), ("lo", "hi")])
    # Wedge-like graph: two loops of different heights sharing the bottom.
    mixed_vertices = {"b": Fr(0), "t1": Fr(4), "t2": Fr(1, 2)}
    mixed_edges = [("b", "t1"), ("b", "t1"), ("b", "t2"), ("b", "t2")]

    out = {
        "big_circle": {
            "comps_mid": components(*big, Fr(1, 2), Fr(7, 2)),
            "comps_all": components(*big, Fr(-1), Fr(5)),
            "comps_lower": components(*big, Fr(-1), Fr(2)),
            "slice_rank_delta1": slice_cycle_rank(*big, Fr(1), Fr(-1), Fr(5)),
        },
        "small_circle": {
            "comps_all": components(*small, Fr(-1), Fr(1)),
            "slice_rank_delta1": slice_cycle_rank(*small, Fr(1), Fr(-1), Fr(2)),
        },
        "mixed": {
            "slice_rank_delta1": slice_cycle_rank(mixed_vertices, mixed_edges,
                                                  Fr(1), Fr(-1), Fr(5)),
        },
    }
    print(json.dumps(out, indent=2, sort_keys=True))


main()

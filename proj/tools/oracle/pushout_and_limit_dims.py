#!/usr/bin/env python3
"""Independent computation of colimit/limit dimensions for the three
zig-zag modules used as golden values (k <-1- k -1-> k, 0 <-0- k -1-> k,
k <-0- k -0-> k) over F2, plus the natural-transformation space dimension
for the first module against itself.

Everything here is a from-scratch reimplementation (plain row reduction
mod p) so the C++ library can be tested against it.
"""

import json


def rank_mod(mat, p):
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def zigzag_colimit_dim(dims, map_ba, map_bc, p=2):
    """Poset b <= a, b <= c. dims = {a,b,c}; maps are scalars (dim<=1)."""
    da, db, dc = dims
    total = da + db + dc
    off = {"a": 0, "b": da, "c": da + db}
    cols = []
    # edge (b,a): M(b<=a)x - x
    for j in range(db):
        col = [0] * total
        if da:
            col[off["a"]] = map_ba
        col[off["b"] + j] = (-1) % p
        cols.append(col)
    # edge (b,c)
    for j in range(db):
        col = [0] * total
        if dc:
            col[off["c"]] = map_bc
        col[off["b"] + j] = (-1) % p
        cols.append(col)
    if not cols:
        return total
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(total)]
    return total - rank_mod(mat, p)


def zigzag_limit_dim(dims, map_ba, map_bc, p=2):
    da, db, dc = dims
    total = da + db + dc
    rows = []
    # edge (b,a): M(b<=a)x_b - x_a = 0
    for i in range(da):
        row = [0] * total
        row[0 + i] = (-1) % p
        if db:
            row[da] = map_ba
        rows.append(row)
    for i in range(dc):
        row = [0] * total
        row[da + db + i] = (-1) % p
        if db:
            row[da] = map_bc
        rows.append(row)
    if not rows:
        return total
    return total - rank_mod(rows, p)


def nat_space_dim_A_to_A(p=2):
    # unknowns: ta, tb, tc scalars; constraints: ta*1 = 1*tb, tc*1 = 1*tb.
    mat = [
        [1, (-1) % p, 0],
        [0, (-1) % p, 1],
    ]
    return 3 - rank_mod(mat, p)


result = {
    "colim_A": zigzag_colimit_dim((1, 1, 1), 1, 1),
    "colim_B": zigzag_colimit_dim((0, 1, 1), 0, 1),
    "colim_C": zigzag_colimit_dim((1, 1, 1), 0, 0),
    "limit_A": zigzag_limit_dim((1, 1, 1), 1, 1),
    "limit_zero_maps": zigzag_limit_dim((1, 1, 1), 0, 0),
    "nat_space_A_A": nat_space_dim_A_to_A(),
}
print(json.dumps(result, indent=2, sort_keys=True))

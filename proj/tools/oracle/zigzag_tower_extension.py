#!/usr/bin/env python3
"""Independent computation of the left Kan extension of a 4-spot zig-zag
module into the zig-zag tower poset W, frozen as golden values.

W = {(c, r) : 0 <= r <= 9, c == r (mod 2), even rows c in 2..12, odd rows
c in 1..13}, with (c, r) <= (c', r') iff r <= r', |c' - c| <= r' - r and
c' - c == r' - r (mod 2).  Z = rows {0, 1}.  The module M over Z:

    row 1:  ... 0   k(a5)   0   k(a7)   0 ...
    row 0:      ... k(b6) ...  k(b8) ...
    maps: b6->a5 = 1, b6->a7 = 1, b8->a7 = 1, b8->a9 = 0 (a9 is the zero
    space), everything else 0.

The extension value at (c, r) is the colimit of M over
{z in Z : z <= (c, r)}.  Computed here with a generic mod-2 colimit
(cokernel of the Hasse-edge presentation) written independently of the
C++ code.
"""

import itertools
import json


def rank_mod2(mat):
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] & 1), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(rows):
            if i != r and m[i][c] & 1:
                m[i] = [(a ^ b) & 1 for a, b in zip(m[i], m[r])]
        r += 1
    return r


def w_elements():
    out = []
    for r in range(10):
        lo, hi = (2, 12) if r % 2 == 0 else (1, 13)
        for c in range(lo, hi + 1, 2):
            out.append((c, r))
    return out


def w_leq(x, y):
    (c1, r1), (c2, r2) = x, y
    return r1 <= r2 and abs(c2 - c1) <= r2 - r1 and (c2 - c1) % 2 == (r2 - r1) % 2


Z = [(5, 1), (7, 1), (6, 0), (8, 0), (9, 1), (3, 1)]  # include zero spots near support
DIM = {(5, 1): 1, (7, 1): 1, (6, 0): 1, (8, 0): 1}
MAPS = {((6, 0), (5, 1)): 1, ((6, 0), (7, 1)): 1, ((8, 0), (7, 1)): 1, ((8, 0), (9, 1)): 0}

# Use the full rows 0,1 of W as Z so sublevel sets are honest subsets.
Z = [(c, r) for (c, r) in w_elements() if r <= 1]


def zdim(z):
    return DIM.get(z, 0)


def zmap(a, b):
    return MAPS.get((a, b), 0)


def colim_dim_over(subset):
    elems = [z for z in subset]
    offs, total = {}, 0
    for z in elems:
        offs[z] = total
        total += zdim(z)
    # Hasse edges inside the subset: covers of the induced poset.
    edges = []
    for a, b in itertools.permutations(elems, 2):
        if a != b and w_leq(a, b):
            if not any(c != a and c != b and w_leq(a, c) and w_leq(c, b) for c in elems):
                edges.append((a, b))
    cols = []
    for a, b in edges:
        for j in range(zdim(a)):
            col = [0] * total
            if zdim(b):
                col[offs[b]] = zmap(a, b)
            col[offs[a] + j] ^= 1  # -1 == 1 mod 2
            col[offs[a] + j] %= 2
            cols.append(col)
    if not cols:
        return total
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(total)]
    return total - rank_mod2(mat)


def main():
    table = {}
    for w in w_elements():
        sub = [z for z in Z if w_leq(z, w)]
        d = colim_dim_over(sub)
        if d:
            table.setdefault(str(w[1]), []).append([w[0], d])
    # Maps of the restriction to rows {2,3} and {4,5}: computed as the
    # factoring scalar between adjacent 1-dim colimits.  For 1-dim colimits
    # over F2 the induced map is 1 iff the canonical generator survives;
    # verified here by comparing the colimit over sub(lower) inside
    # sub(upper): map is nonzero iff the composite cocone leg is nonzero.
    def induced_scalar(wlo, whi):
        # value spaces are colimits; both dims must be 1
        sub_lo = [z for z in Z if w_leq(z, wlo)]
        sub_hi = [z for z in Z if w_leq(z, whi)]
        # compute cokernel projection for hi and check whether the image of
        # any generator of lo's colimit maps to zero: do it by dimension
        # count of colim over sub_hi with the lo-generator identified to 0.
        # Simpler independent check: the map lo->hi is zero iff
        # dim colim(sub_hi) == dim colim(sub_hi with lo's support removed)
        # fails to detect...  Use explicit cokernel algebra instead.
        offs, total = {}, 0
        for z in sub_hi:
            offs[z] = total
            total += zdim(z)
        cols = []
        for a, b in itertools.permutations(sub_hi, 2):
            if w_leq(a, b):
                if not any(c != a and c != b and w_leq(a, c) and w_leq(c, b) for c in sub_hi):
                    for j in range(zdim(a)):
                        col = [0] * total
                        if zdim(b):
                            col[offs[b]] = zmap(a, b)
                        col[offs[a] + j] ^= 1
                        cols.append(col)
        # cokernel projection mod 2 via row reduction of presentation^T:
        # a functional on total space vanishing on the column space, applied
        # to the generator supported on sub_lo.  The induced map is nonzero
        # iff some cocone functional is nonzero on a lo generator AND lo's
        # colimit is nonzero.  We only need zero/nonzero for 1-dim cases:
        # the composite leg of z (any support of lo) into colim(hi).
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(total)] if cols else [
            [0] * 0 for _ in range(total)
        ]
        # Solve: is e_z in the column space?  leg is zero iff e_z in im.
        for z in sub_lo:
            if zdim(z):
                ez = [1 if i == offs[z] else 0 for i in range(total)]
                aug = [row[:] + [ez[i]] for i, row in enumerate(mat)]
                in_image = rank_mod2(aug) == rank_mod2(mat) if cols else all(v == 0 for v in ez)
                return 0 if in_image else 1
        return 0

    shifts = {}
    for eps in (1, 2):
        rlo, rhi = 2 * eps, 2 * eps + 1
        entries = {}
        for w in w_elements():
            if w[1] in (rlo, rhi):
                sub = [z for z in Z if w_leq(z, w)]
                d = colim_dim_over(sub)
                if d:
                    entries[str(w)] = d
        arrows = {}
        for wlo in w_elements():
            if wlo[1] != rlo:
                continue
            for dc in (-1, 1):
                whi = (wlo[0] + dc, rhi)
                if whi in w_elements():
                    if entries.get(str(wlo)) and entries.get(str(whi)):
                        arrows[f"{wlo}->{whi}"] = induced_scalar(wlo, whi)
        shifts[str(eps)] = {"dims": entries, "maps": arrows}

    print(json.dumps({"rows": table, "shifts": shifts}, indent=2, sort_keys=True))


main()

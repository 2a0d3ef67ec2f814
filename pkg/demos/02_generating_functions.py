"""
Bivariate generating functions
==============================

Expand family series exactly and compare them with brute force.
"""

from tubex import delta_graph as dg
from tubex import families as fam
from tubex import series as ser

K = N = 6

# halohedra: rows are f-vectors in the polyhedron convention
h = ser.halohedra(K, N)
for row in h.triangle():
    print(row)

# every series-backed family against exhaustive enumeration
for name in ser.FAMILY_SERIES:
    s = ser.family_series(name, 4, 4)
    lo = 1 if name in ("missing-vertex-double-path", "cis-double-path", "trans-double-path", "twisted-path", "twisted-cycle") else 0
    same = all(
        [int(c) for c in s.row(n, upto=n)] == list(dg.fvector(fam.build(name, n)).polyhedron())
        for n in range(lo, 5)
    )
    print(f"{name:28s} {same}")

# the twisted cycle satisfies a first-order PDE in terms of twisted paths
lhs, rhs = ser.twisted_cycle_pde_sides(8, 8)
print("PDE holds to (8,8):", lhs == rhs)

# vertex counts of twisted paths from their closed form
print([int(ser.twisted_path_vertices(8).coeff(0, n)) for n in range(9)])

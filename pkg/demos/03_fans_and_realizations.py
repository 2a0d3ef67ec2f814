"""
Fans and the standard cut
=========================

Check the fan property exactly and realize a 3-dimensional polytope.
"""

from itertools import combinations

from tubex import delta_graph as dg
from tubex import families as fam
from tubex import fans

g = fam.build("cycle-plus", 3)
maximal = dg.maximal_tubings(g)
ok = all(fans.fan_pair_check(g, a, b) for a, b in combinations(maximal, 2))
print(len(maximal), "maximal tubings; fan property:", ok)

# vertices of the standard cut are exact rationals
poly = fans.realize_standard_cut(g)
print("simple:", poly.is_simple(), "vertices:", len(poly.vertices))
for tubing, vertex in list(zip(poly.tubings, poly.vertices))[:4]:
    print([sorted(g.labels_of(t)) for t in tubing], [str(x) for x in vertex])

# decimal OBJ for a mesh viewer
print(poly.to_obj()[:200])

"""
Tubings and f-vectors of hypercube graphs
=========================================

Build a few Δ-graphs, list their tubes and count their faces.
"""

from tubex import delta_graph as dg
from tubex import families as fam
from tubex.complex_core import hypercube
from tubex.delta_graph import DeltaGraph

# a hypercube graph on ±[3] with edges {1,2}, {2,3}, {2,-3}
g = DeltaGraph.from_edges(hypercube(3), [(1, 2), (2, 3), (2, -3)])
for t in g.tubes():
    print(sorted(g.labels_of(t)))

# face counts in both conventions
f = dg.fvector(g)
print("complex   ", f.complex())
print("polyhedron", f.polyhedron())

# built-in families: the halohedron column of vertex counts
for n in range(6):
    print(n, dg.maximal_tubing_count(fam.build("halohedron", n)))

# the path hypercube graph gives associahedra
for n in range(1, 5):
    print(n, dg.fvector(fam.build("path-plus", n)).polyhedron(), dg.fvector(fam.build("simplex-path", n + 1)).polyhedron())

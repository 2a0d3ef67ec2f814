"""Brute-force reference implementations written directly from the definitions."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from tubex import complex_core as cc
from tubex import families as fam
from tubex.delta_graph import DeltaGraph


def faces(cx: cc.ForbiddenComplex) -> set[frozenset]:
    """All label sets containing no circuit."""
    labels = cx.ground.labels
    circuits = [frozenset(cx.labels_of(c)) for c in cx.circuits]
    out = set()
    for r in range(len(labels) + 1):
        for combo in combinations(labels, r):
            s = frozenset(combo)
            if not any(c <= s for c in circuits):
                out.add(s)
    return out


def connected(labels: frozenset, edges: set[frozenset]) -> bool:
    if not labels:
        return False
    start = next(iter(labels))
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in labels:
            if w not in seen and frozenset((v, w)) in edges:
                seen.add(w)
                stack.append(w)
    return seen == labels


def tubes(g: DeltaGraph) -> set[frozenset]:
    edges = {frozenset(e) for e in g.edge_labels()}
    return {f for f in faces(g.complex) if connected(f, edges)}


def compatible(a: frozenset, b: frozenset, edges: set[frozenset], face_set: set[frozenset]) -> bool:
    if a <= b or b <= a:
        return True
    if a & b:
        return False
    if any(frozenset((x, y)) in edges for x in a for y in b):
        return False
    return (a | b) in face_set


def tubings(g: DeltaGraph) -> list[frozenset]:
    """Every set of pairwise compatible tubes whose union is a face."""
    edges = {frozenset(e) for e in g.edge_labels()}
    face_set = faces(g.complex)
    ts = sorted(tubes(g), key=lambda t: (len(t), sorted(map(str, t))))
    out: list[frozenset] = []

    def grow(chosen: list[frozenset], start: int) -> None:
        union = frozenset().union(*chosen) if chosen else frozenset()
        if union in face_set:
            out.append(frozenset(chosen))
        for i in range(start, len(ts)):
            t = ts[i]
            if all(compatible(t, c, edges, face_set) for c in chosen):
                grow(chosen + [t], i + 1)

    grow([], 0)
    return out


def tubing_counts(g: DeltaGraph) -> list[int]:
    counts: dict[int, int] = {}
    for t in tubings(g):
        counts[len(t)] = counts.get(len(t), 0) + 1
    return [counts.get(k, 0) for k in range(max(counts) + 1)]


def maximal_count(g: DeltaGraph) -> int:
    all_t = tubings(g)
    return sum(1 for t in all_t if not any(t < u for u in all_t))


def series_mul(a: dict, b: dict, K: int, N: int) -> dict:
    out: dict = {}
    for (k1, n1), c1 in a.items():
        for (k2, n2), c2 in b.items():
            k, n = k1 + k2, n1 + n2
            if k <= K and n <= N:
                out[(k, n)] = out.get((k, n), 0) + c1 * c2
    return {key: v for key, v in out.items() if v}


# -- hypothesis strategies --------------------------------------------------

@st.composite
def hypercube_graphs(draw, max_n: int = 3) -> DeltaGraph:
    n = draw(st.integers(1, max_n))
    pool = fam._full(n)
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool))) if pool else []
    return DeltaGraph.from_edges(cc.hypercube(n), chosen, dim=n)


@st.composite
def simplex_graphs(draw, max_m: int = 5) -> DeltaGraph:
    m = draw(st.integers(2, max_m))
    pool = fam.complete_edges(m)
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    return fam._simplex(m, chosen, "random")


@st.composite
def small_complexes(draw, max_size: int = 6) -> cc.ForbiddenComplex:
    m = draw(st.integers(0, max_size))
    ground = cc.GroundSet(tuple(range(1, m + 1)))
    if m < 2:
        return cc.ForbiddenComplex(ground, ())
    sets = st.integers(1, ground.full).filter(lambda s: s.bit_count() >= 2)
    circuits = draw(st.lists(sets, max_size=4))
    return cc.ForbiddenComplex.create(ground, circuits)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series_dicts(draw, K: int = 4, N: int = 4, constant: Fraction | None = None) -> dict:
    terms = draw(st.dictionaries(st.tuples(st.integers(0, K), st.integers(0, N)), rationals, max_size=8))
    if constant is not None:
        terms[(0, 0)] = constant
    return {k: Fraction(v) for k, v in terms.items() if v}

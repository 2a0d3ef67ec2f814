"""Facial preposets of nested sets, their cones, exact fan checks and the standard cut."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .complex_core import ForbiddenComplex, canonical_key, iter_bits
from .delta_graph import BuildingSet, DeltaGraph, is_tubing, iter_nested_sets, maximal_tubings
from .errors import InputError, PreconditionError

Vector = tuple[Fraction, ...]


# --------------------------------------------------------------------------
# exact linear algebra over the rationals
# --------------------------------------------------------------------------

def _row_reduce(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def matrix_rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(_row_reduce(rows, len(rows[0]) if ncols is None else ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = _row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(tuple(v))
    return basis


def solve(columns: Sequence[Vector], target: Vector) -> Vector | None:
    """Coefficients c with sum c_i columns[i] = target, or None (columns assumed independent)."""
    n = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    m, pivots = _row_reduce(aug, k + 1)
    if k in pivots:
        return None
    out = [Fraction(0)] * k
    for r, p in enumerate(pivots):
        out[p] = m[r][k]
    return tuple(out)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling to a primitive integer vector."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# --------------------------------------------------------------------------
# facial preposets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FacialPreposet:
    """Reflexive-transitive relation on the ground set plus a top element ∞.

    Elements are 0..size-1 and ∞ is ``size``.  ``down[j]`` is the bitset of all
    i with i ⪯ j.
    """

    size: int
    down: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.down) != self.size + 1:
            raise InputError("relation needs one row per element plus ∞")
        for j, d in enumerate(self.down):
            if not d >> j & 1:
                raise InputError("relation must be reflexive")
        if self.down[self.size] != (1 << (self.size + 1)) - 1:
            raise InputError("every element must lie below ∞")

    @property
    def infinity(self) -> int:
        return self.size

    def le(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def pairs(self) -> set[tuple[int, int]]:
        return {(i, j) for j, d in enumerate(self.down) for i in iter_bits(d)}

    def is_transitive(self) -> bool:
        for j, d in enumerate(self.down):
            for i in iter_bits(d):
                if self.down[i] & ~d:
                    return False
        return True

    def infinity_class(self) -> int:
        """Elements equivalent to ∞ (excluding ∞ itself)."""
        inf = self.size
        return sum(1 << j for j in range(self.size) if self.down[j] >> inf & 1)

    def support(self) -> int:
        return ((1 << self.size) - 1) & ~self.infinity_class()

    def is_subrelation(self, other: "FacialPreposet") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.down, other.down))

    def principal_ideals(self) -> set[int]:
        """Down-sets of the finite part, restricted to finite elements."""
        finite = (1 << self.size) - 1
        return {self.down[j] & finite for j in iter_bits(self.support())}


def transitive_closure(size: int, down: Sequence[int]) -> tuple[int, ...]:
    rows = list(down)
    total = len(rows)
    for k in range(total):
        for j in range(total):
            if rows[j] >> k & 1:
                rows[j] |= rows[k]
    return tuple(rows)


def preposet_from_nested(g: DeltaGraph, nested: Iterable[int]) -> FacialPreposet:
    """Q(N): i ⪯ j iff every tube of N containing j contains i."""
    tubes = sorted(set(nested), key=canonical_key)
    if tubes and not is_tubing(g, tubes):
        raise PreconditionError("Q(N) needs a nested set")
    m = g.size
    everything = (1 << (m + 1)) - 1
    down = []
    for j in range(m):
        mask = everything
        for t in tubes:
            if t >> j & 1:
                mask &= t
        down.append(mask)
    down.append(everything)
    return FacialPreposet(m, tuple(down))


def closure_of_union(q1: FacialPreposet, q2: FacialPreposet) -> FacialPreposet:
    if q1.size != q2.size:
        raise InputError("preposets on different ground sets")
    return FacialPreposet(q1.size, transitive_closure(q1.size + 1, [a | b for a, b in zip(q1.down, q2.down)]))


def is_contraction(q1: FacialPreposet, q2: FacialPreposet) -> bool:
    """Is q1 the closure of q2 ∪ R^op for some R ⊆ q2?

    Taking R to be every relation of q2 whose reverse lies in q1 gives the
    largest candidate, so that single closure decides the question."""
    if q1.size != q2.size or not q2.is_subrelation(q1):
        return False
    down = list(q2.down)
    for j, d in enumerate(q2.down):
        for i in iter_bits(d):
            if q1.le(j, i):
                down[i] |= 1 << j
    return transitive_closure(q1.size + 1, down) == q1.down


# --------------------------------------------------------------------------
# cones
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeV:
    dim: int
    generators: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return matrix_rank(self.generators, self.dim) if self.generators else 0

    def contains(self, v: Sequence[Fraction]) -> bool:
        """Exact membership for cones with independent generators."""
        v = tuple(Fraction(x) for x in v)
        if not self.generators:
            return all(x == 0 for x in v)
        coeffs = solve(self.generators, v)
        return coeffs is not None and all(c >= 0 for c in coeffs)

    def contains_cone(self, other: "ConeV") -> bool:
        return all(self.contains(g) for g in other.generators)


def standard_vectors(g: DeltaGraph) -> dict[int, Vector]:
    """v_i = e_i and v_{-i} = -e_i for the hypercube on ±[n]."""
    if not g.is_hypercube():
        raise PreconditionError("standard vectors need a hypercube graph")
    n = g.size // 2
    out: dict[int, Vector] = {}
    for idx, lab in enumerate(g.ground.labels):
        if not isinstance(lab, int):
            raise PreconditionError("standard vectors need signed integer labels")
        e = [Fraction(0)] * n
        e[abs(lab) - 1] = Fraction(1 if lab > 0 else -1)
        out[idx] = tuple(e)
    return out


def tube_vector(tube: int, vectors: Mapping[int, Vector], dim: int) -> Vector:
    acc = [Fraction(0)] * dim
    for i in iter_bits(tube):
        acc = [a + b for a, b in zip(acc, vectors[i])]
    return tuple(acc)


def cone_of_nested(nested: Iterable[int], vectors: Mapping[int, Vector], dim: int) -> ConeV:
    gens = tuple(tube_vector(t, vectors, dim) for t in sorted(set(nested), key=canonical_key))
    cone = ConeV(dim, gens)
    if cone.rank != len(gens):
        raise PreconditionError("vector assignment is degenerate for this nested set")
    return cone


def _inward_normals(gens: Sequence[Vector], dim: int) -> list[Vector]:
    normals = []
    for skip in range(len(gens)):
        others = [gens[i] for i in range(len(gens)) if i != skip]
        null = nullspace(others, dim)
        if len(null) != 1:
            raise PreconditionError("cone is not simplicial and full-dimensional")
        a = null[0]
        if dot(a, gens[skip]) < 0:
            a = tuple(-x for x in a)
        normals.append(a)
    return normals


def intersect_simplicial_cones(gens1: Sequence[Vector], gens2: Sequence[Vector], dim: int) -> set[tuple[int, ...]]:
    """Extreme rays of the intersection by the double description method.

    Start from the rays of the first cone and cut by each facet halfspace of
    the second; two rays are combined only if adjacent (their common tight
    constraints have rank dim-2)."""
    a1 = _inward_normals(gens1, dim)
    a2 = _inward_normals(gens2, dim)
    constraints = list(a1)
    rays = [tuple(Fraction(x) for x in g) for g in gens1]

    def tight(r: Vector) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(constraints) if dot(a, r) == 0)

    for a in a2:
        values = [dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, values) if v > 0]
        zero = [r for r, v in zip(rays, values) if v == 0]
        neg = [(r, v) for r, v in zip(rays, values) if v < 0]
        tights = {r: tight(r) for r in rays}
        new = list(pos) + list(zero)
        for p in pos:
            vp = dot(a, p)
            for q, vq in neg:
                common = tights[p] & tights[q]
                if matrix_rank([constraints[i] for i in common], dim) != dim - 2:
                    continue
                new.append(tuple(vp * y - vq * x for x, y in zip(p, q)))
        constraints.append(a)
        dedup: dict[tuple[int, ...], Vector] = {}
        for r in new:
            if any(r):
                dedup.setdefault(primitive(r), r)
        rays = list(dedup.values())
    return {primitive(r) for r in rays}


def fan_pair_check(g: DeltaGraph, n1: Sequence[int], n2: Sequence[int], vectors: Mapping[int, Vector] | None = None) -> bool:
    """Exact intersection of two maximal cones equals the cone of the common subtubing."""
    dim = g.size // 2 if vectors is None else len(next(iter(vectors.values())))
    if dim > 4:
        raise PreconditionError("exact fan checks are limited to dimension 4")
    vectors = standard_vectors(g) if vectors is None else vectors
    c1 = cone_of_nested(n1, vectors, dim)
    c2 = cone_of_nested(n2, vectors, dim)
    if len(c1.generators) != dim or len(c2.generators) != dim:
        raise PreconditionError("fan checks need maximal tubings")
    rays = intersect_simplicial_cones(c1.generators, c2.generators, dim)
    common = set(n1) & set(n2)
    expected = {primitive(tube_vector(t, vectors, dim)) for t in common}
    return rays == expected


# --------------------------------------------------------------------------
# maximal building sets and chains
# --------------------------------------------------------------------------

def maximal_building_set(cx: ForbiddenComplex) -> BuildingSet:
    return BuildingSet(cx, tuple(f for f in cx.faces() if f))


def maximal_chains(cx: ForbiddenComplex) -> set[tuple[int, ...]]:
    """Maximal chains of nonempty faces, grown one element at a time."""
    out: set[tuple[int, ...]] = set()

    def grow(chain: tuple[int, ...], top: int) -> None:
        extended = False
        for i in range(cx.size):
            if not top >> i & 1 and cx._is_face(top | 1 << i):
                extended = True
                grow(chain + (top | 1 << i,), top | 1 << i)
        if not extended:
            out.add(tuple(sorted(chain, key=canonical_key)))

    for i in range(cx.size):
        grow((1 << i,), 1 << i)
    return out


def maximal_nested_sets(b: BuildingSet) -> set[tuple[int, ...]]:
    nested = [tuple(sorted(s, key=canonical_key)) for s in iter_nested_sets(b)]
    maximal = set()
    as_sets = [frozenset(s) for s in nested]
    for s, fs in zip(nested, as_sets):
        if not any(fs < other for other in as_sets):
            maximal.add(s)
    return maximal


# --------------------------------------------------------------------------
# standard cut realization
# --------------------------------------------------------------------------

def standard_offset(size: int, n: int) -> Fraction:
    """b(|t|) = |t| 3^(n-1) - 3^(|t|-2)."""
    return size * Fraction(3) ** (n - 1) - Fraction(3) ** (size - 2)


@dataclass(frozen=True)
class Facet:
    tube: int
    normal: Vector
    offset: Fraction


@dataclass
class RealizedPolytope:
    dim: int
    facets: list[Facet]
    vertices: list[Vector]
    tubings: list[tuple[int, ...]]
    edges: list[tuple[int, int]]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def tight_facets(self, v: Vector) -> list[int]:
        return [i for i, f in enumerate(self.facets) if dot(f.normal, v) == f.offset]

    def is_simple(self) -> bool:
        return all(len(self.tight_facets(v)) == self.dim for v in self.vertices)

    def to_json(self, labels_of, approx: bool = False) -> dict:
        def num(x: Fraction):
            return float(x) if approx else str(x)

        return {
            "vertices": [[num(x) for x in v] for v in self.vertices],
            "facets": [
                {"tube": [str(lab) for lab in labels_of(f.tube)], "normal": [num(x) for x in f.normal], "offset": num(f.offset)}
                for f in self.facets
            ],
            "edges": [list(e) for e in self.edges],
            "failures": list(self.failures),
        }

    def facet_cycles(self) -> list[list[int]]:
        """Vertex cycles around each 2-dimensional facet (3-dimensional polytopes only)."""
        if self.dim != 3:
            raise PreconditionError("facet cycles are defined for 3-dimensional polytopes")
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        cycles = []
        for fi, f in enumerate(self.facets):
            on = [i for i, tb in enumerate(self.tubings) if f.tube in tb]
            if len(on) < 3:
                continue
            members = set(on)
            cycle = [on[0]]
            prev = None
            while True:
                nxt = sorted(x for x in adj[cycle[-1]] & members if x != prev and x not in cycle[1:])
                if not nxt or (nxt[0] == cycle[0] and len(cycle) > 2):
                    break
                choice = next((x for x in nxt if x != cycle[0]), None)
                if choice is None:
                    break
                prev = cycle[-1]
                cycle.append(choice)
            cycles.append(cycle)
        return cycles

    def to_obj(self) -> str:
        """Wavefront OBJ with decimal coordinates (display only)."""
        lines = ["# display-only decimal coordinates"]
        for v in self.vertices:
            lines.append("v " + " ".join(f"{float(x):.6f}" for x in v))
        for cyc in self.facet_cycles():
            lines.append("f " + " ".join(str(i + 1) for i in cyc))
        return "\n".join(lines) + "\n"


def realize_standard_cut(g: DeltaGraph) -> RealizedPolytope:
    """Facets v_t . x <= b(|t|); one vertex per maximal tubing, solved exactly."""
    vectors = standard_vectors(g)
    n = g.size // 2
    if n > 6:
        raise PreconditionError("standard cut realization is limited to n <= 6")
    facets = [Facet(t, tube_vector(t, vectors, n), standard_offset(t.bit_count(), n)) for t in g.tubes()]
    index = {f.tube: i for i, f in enumerate(facets)}
    tubings = sorted(tuple(sorted(tb, key=canonical_key)) for tb in maximal_tubings(g))
    vertices: list[Vector] = []
    failures: list[str] = []
    for tb in tubings:
        rows = [facets[index[t]].normal for t in tb]
        columns = [tuple(r[i] for r in rows) for i in range(n)]
        x = solve(columns, tuple(facets[index[t]].offset for t in tb)) if n else ()
        if x is None or matrix_rank(rows, n) != n:
            failures.append(f"singular system for tubing {[g.labels_of(t) for t in tb]}")
            vertices.append(tuple(Fraction(0) for _ in range(n)))
            continue
        for f in facets:
            if f.tube in tb:
                continue
            if dot(f.normal, x) >= f.offset:
                failures.append(f"tubing {[g.labels_of(t) for t in tb]} violates facet {g.labels_of(f.tube)}")
                break
        vertices.append(tuple(x))
    edges = []
    sets = [set(tb) for tb in tubings]
    for i, j in combinations(range(len(tubings)), 2):
        if len(sets[i] & sets[j]) == n - 1:
            edges.append((i, j))
    return RealizedPolytope(n, facets, vertices, tubings, edges, failures)

"""Graphs whose edges are faces of a complex, their tubes and tubings.

A tube is a connected face, a tubing a set of pairwise compatible tubes
whose union is a face.  Tubes are bitsets over the complex's ground set and
are always listed in the canonical (size, value) order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from . import complex_core as cc
from .complex_core import FaceSet, ForbiddenComplex, GroundSet, Label, canonical_key, iter_bits
from .errors import CapacityError, InputError, MalformedFileError, PreconditionError

MAX_TUBES = 4096


# --------------------------------------------------------------------------
# f-vectors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FVector:
    """Face counts of a tubing complex.

    ``counts`` are stored in the requested ``convention``.  In the complex
    convention ``counts[k]`` is the number of k-element tubings; in the
    polyhedron convention ``counts[j]`` is the number of j-dimensional faces of
    the dual polyhedron of dimension ``dim``.
    """

    counts: tuple[int, ...]
    dim: int
    convention: str = "complex"

    def __post_init__(self) -> None:
        if self.convention not in ("complex", "polyhedron"):
            raise InputError(f"unknown convention {self.convention!r}")
        if len(self.counts) > self.dim + 1:
            raise InputError("f-vector longer than its dimension allows")

    @classmethod
    def from_complex(cls, counts: Sequence[int], dim: int) -> "FVector":
        counts = list(counts)
        while len(counts) > 1 and counts[-1] == 0:
            counts.pop()
        return cls(tuple(counts), dim, "complex")

    def complex(self) -> tuple[int, ...]:
        if self.convention == "complex":
            return self.counts
        padded = list(self.counts) + [0] * (self.dim + 1 - len(self.counts))
        out = list(reversed(padded))
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def polyhedron(self) -> tuple[int, ...]:
        if self.convention == "polyhedron":
            return self.counts
        padded = list(self.counts) + [0] * (self.dim + 1 - len(self.counts))
        return tuple(reversed(padded))

    def to(self, convention: str) -> "FVector":
        if convention == "complex":
            return FVector(self.complex(), self.dim, "complex")
        if convention == "polyhedron":
            return FVector(self.polyhedron(), self.dim, "polyhedron")
        raise InputError(f"unknown convention {convention!r}")

    @property
    def vertices(self) -> int:
        return self.polyhedron()[0]


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def poly_trim(a: Sequence[int]) -> list[int]:
    out = list(a)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_derivative(a: Sequence[int]) -> list[int]:
    return poly_trim([k * a[k] for k in range(1, len(a))] or [0])


# --------------------------------------------------------------------------
# Δ-graphs
# --------------------------------------------------------------------------

def _edge_allowed(cx: ForbiddenComplex, pair: int) -> bool:
    # the two-vertex simplex graph keeps its edge although the pair is a circuit
    if cx._is_face(pair):
        return True
    return cx.size == 2 and cx.circuits == (pair,) and cx.ground.pairing == (-1, -1)


@dataclass(frozen=True)
class DeltaGraph:
    """A graph on the ground set of ``complex`` whose edges are faces.

    ``adjacency[i]`` is the neighbour bitset of element ``i``.  ``dim`` is the
    nominal dimension of the dual polyhedron; it defaults to the complex rank
    and is kept fixed under vertex deletion.
    """

    complex: ForbiddenComplex
    adjacency: tuple[int, ...]
    dim: int = -1
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        cx = self.complex
        if len(self.adjacency) != cx.size:
            raise InputError("adjacency list must have one entry per ground element")
        for i, nb in enumerate(self.adjacency):
            if nb & ~cx.ground.full or nb >> i & 1:
                raise InputError("adjacency out of range or has a loop")
            for j in iter_bits(nb):
                if not self.adjacency[j] >> i & 1:
                    raise InputError("adjacency must be symmetric")
                if j > i and not _edge_allowed(cx, (1 << i) | (1 << j)):
                    raise InputError(
                        f"edge {{{cx.ground.labels[i]},{cx.ground.labels[j]}}} is not a face"
                    )
        if self.dim < 0:
            object.__setattr__(self, "dim", cx.rank)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        cx: ForbiddenComplex,
        edges: Iterable[tuple[Label, Label]],
        dim: int = -1,
        name: str = "",
        skip_nonfaces: bool = False,
    ) -> "DeltaGraph":
        """Build from label pairs; with ``skip_nonfaces`` forbidden pairs are silently dropped."""
        adj = [0] * cx.size
        for a, b in edges:
            i, j = cx.ground.index(a), cx.ground.index(b)
            if i == j:
                raise InputError("loops are not allowed")
            if skip_nonfaces and not _edge_allowed(cx, (1 << i) | (1 << j)):
                continue
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(cx, tuple(adj), dim, name)

    @property
    def ground(self) -> GroundSet:
        return self.complex.ground

    @property
    def size(self) -> int:
        return self.complex.size

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nb in enumerate(self.adjacency) for j in iter_bits(nb) if j > i]

    def edge_labels(self) -> list[tuple[Label, Label]]:
        labs = self.ground.labels
        return [(labs[i], labs[j]) for i, j in self.edges()]

    def neighbors(self, mask: int) -> int:
        """Vertices adjacent to ``mask`` and outside it."""
        out = 0
        for i in iter_bits(mask):
            out |= self.adjacency[i]
        return out & ~mask

    def is_connected_set(self, mask: int) -> bool:
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= self.adjacency[i]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def is_tube(self, mask: int) -> bool:
        return self.complex._is_face(mask) and self.is_connected_set(mask)

    def mask(self, labels: Iterable[Label]) -> int:
        return self.ground.mask(labels)

    def labels_of(self, mask: int) -> tuple[Label, ...]:
        return self.ground.labels_of(mask)

    def is_hypercube(self) -> bool:
        """True when the complex is exactly a hypercube diagram (every element paired)."""
        cx = self.complex
        if any(p < 0 for p in cx.ground.pairing):
            return False
        expected = cc.minimize((1 << i) | (1 << p) for i, p in enumerate(cx.ground.pairing))
        return tuple(expected) == cx.circuits

    # -- cached tube data -------------------------------------------------------

    @cached_property
    def _tube_data(self) -> "_TubeData":
        return _TubeData.build(self)

    def tubes(self) -> tuple[int, ...]:
        return self._tube_data.tubes


# --------------------------------------------------------------------------
# tubes and compatibility
# --------------------------------------------------------------------------

def _enumerate_tubes(g: DeltaGraph) -> list[int]:
    """Connected faces by DFS growth; each connected set is produced once."""
    cx = g.complex
    adj = g.adjacency
    found: list[int] = []

    def extend(s: int, cand: int, excluded: int) -> None:
        found.append(s)
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            new = s | low
            if cx._is_face(new):
                ext = (cand | adj[w]) & ~new & ~excluded
                extend(new, ext, excluded)
            excluded |= low

    for v in range(g.size):
        lower = (1 << (v + 1)) - 1
        extend(1 << v, adj[v] & ~lower, lower)
    return sorted(found, key=canonical_key)


def tubes(g: DeltaGraph) -> tuple[int, ...]:
    return g.tubes()


def _compatible(g: DeltaGraph, a: int, b: int) -> bool:
    if a & b:
        return a & b == a or a & b == b
    if g.neighbors(a) & b:
        return False
    return g.complex._is_face(a | b)


def is_compatible(g: DeltaGraph, a: FaceSet, b: FaceSet) -> bool:
    """Nested, or disjoint and non-adjacent with a face as union."""
    if not (g.is_tube(a) and g.is_tube(b)):
        raise PreconditionError("compatibility is defined for tubes only")
    return _compatible(g, a, b)


def is_tubing(g: DeltaGraph, family: Iterable[FaceSet]) -> bool:
    family = list(family)
    for t in family:
        if not g.is_tube(t):
            raise PreconditionError("every member of a tubing must be a tube")
    for a, b in combinations(family, 2):
        if not _compatible(g, a, b):
            return False
    union = 0
    for t in family:
        union |= t
    return g.complex._is_face(union)


@dataclass
class _TubeData:
    tubes: tuple[int, ...]
    index: dict[int, int]
    compat: tuple[int, ...]
    flag: bool

    @classmethod
    def build(cls, g: DeltaGraph) -> "_TubeData":
        ts = _enumerate_tubes(g)
        if len(ts) > MAX_TUBES:
            raise CapacityError(f"{len(ts)} tubes exceed the limit of {MAX_TUBES}")
        compat = []
        for i, a in enumerate(ts):
            row = 0
            for j, b in enumerate(ts):
                if i != j and _compatible(g, a, b):
                    row |= 1 << j
            compat.append(row)
        return cls(tuple(ts), {t: i for i, t in enumerate(ts)}, tuple(compat), g.complex.is_flag())


# --------------------------------------------------------------------------
# tubing enumeration
# --------------------------------------------------------------------------

def _walk(g: DeltaGraph, cand: int, union: int, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    data = g._tube_data
    ts, compat, flag, is_face = data.tubes, data.compat, data.flag, g.complex._is_face
    yield chosen
    while cand:
        low = cand & -cand
        cand ^= low
        j = low.bit_length() - 1
        new_union = union | ts[j]
        if not flag and not is_face(new_union):
            continue
        yield from _walk(g, cand & compat[j], new_union, chosen + (j,))


def _count(g: DeltaGraph, cand: int, union: int, size: int, counts: list[int]) -> None:
    data = g._tube_data
    ts, compat, flag, is_face = data.tubes, data.compat, data.flag, g.complex._is_face
    if len(counts) <= size:
        counts.extend([0] * (size + 1 - len(counts)))
    counts[size] += 1
    while cand:
        low = cand & -cand
        cand ^= low
        j = low.bit_length() - 1
        new_union = union | ts[j]
        if not flag and not is_face(new_union):
            continue
        _count(g, cand & compat[j], new_union, size + 1, counts)


def iter_tubings(g: DeltaGraph) -> Iterator[tuple[int, ...]]:
    """All tubings as tuples of tube masks (canonical order inside each tubing)."""
    ts = g._tube_data.tubes
    full = (1 << len(ts)) - 1
    for idx in _walk(g, full, 0, ()):
        yield tuple(ts[i] for i in idx)


def tubing_counts(g: DeltaGraph, threads: int = 1) -> list[int]:
    """Complex-convention counts (index = tubing size)."""
    data = g._tube_data
    m = len(data.tubes)
    if threads <= 1 or m < 2:
        counts: list[int] = []
        _count(g, (1 << m) - 1, 0, 0, counts)
        return counts

    def branch(j: int) -> list[int]:
        local: list[int] = []
        higher = ~((1 << (j + 1)) - 1) & ((1 << m) - 1)
        _count(g, data.compat[j] & higher, data.tubes[j], 1, local)
        return local

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(branch, range(m)))
    counts = [1]
    for part in parts:
        counts = poly_add(counts, part)
    return poly_trim(counts)


def fvector(g: DeltaGraph, threads: int = 1) -> FVector:
    return FVector.from_complex(tubing_counts(g, threads), g.dim)


def f_polynomial(g: DeltaGraph) -> list[int]:
    """Coefficients of the tubing-complex f-polynomial in s."""
    return list(fvector(g).complex())


def maximal_tubing_count(g: DeltaGraph) -> int:
    """Number of tubings with rank(complex) tubes, pruning branches that cannot get there."""
    data = g._tube_data
    ts, compat, flag, is_face = data.tubes, data.compat, data.flag, g.complex._is_face
    target = g.complex.rank
    total = 0

    def rec(cand: int, union: int, size: int) -> None:
        nonlocal total
        if size == target:
            total += 1
            return
        if size + cand.bit_count() < target:
            return
        while cand:
            if size + cand.bit_count() < target:
                return
            low = cand & -cand
            cand ^= low
            j = low.bit_length() - 1
            new_union = union | ts[j]
            if not flag and not is_face(new_union):
                continue
            rec(cand & compat[j], new_union, size + 1)

    rec((1 << len(ts)) - 1, 0, 0)
    return total


def maximal_tubings(g: DeltaGraph) -> list[tuple[int, ...]]:
    target = g.complex.rank
    return [t for t in iter_tubings(g) if len(t) == target]


def tube_link_counts(g: DeltaGraph, t: FaceSet) -> list[int]:
    """f-polynomial of the link of {t} in the tubing complex, counted directly."""
    data = g._tube_data
    if t not in data.index:
        raise PreconditionError("not a tube")
    j = data.index[t]
    counts: list[int] = []
    _count(g, data.compat[j], t, 0, counts)
    return poly_trim(counts)


# --------------------------------------------------------------------------
# derived graphs
# --------------------------------------------------------------------------

def point_graph() -> DeltaGraph:
    return DeltaGraph(cc.point(), (), 0, "point")


def restrict_graph(g: DeltaGraph, cx: ForbiddenComplex, remap: Sequence[int], dim: int, name: str = "") -> DeltaGraph:
    adj = [0] * cx.size
    for i, nb in enumerate(g.adjacency):
        a = remap[i]
        if a < 0:
            continue
        for j in iter_bits(nb):
            b = remap[j]
            if b >= 0:
                adj[a] |= 1 << b
    return DeltaGraph(cx, tuple(adj), dim, name)


def delete_vertices(g: DeltaGraph, x: FaceSet, name: str = "") -> DeltaGraph:
    """G \\ X on the deleted complex; the nominal dimension is unchanged."""
    cx = cc.delete(g.complex, x)
    _, remap = g.ground.restrict(g.ground.full & ~x)
    return restrict_graph(g, cx, remap, g.dim, name)


def induced_simplex_graph(g: DeltaGraph, t: FaceSet) -> DeltaGraph:
    """Simplex Δ-graph on the tube ``t`` (single circuit ``t``), adjacency restricted."""
    if not g.is_tube(t):
        raise PreconditionError("induced simplex graph needs a tube")
    if t.bit_count() == 1:
        return point_graph()
    sub, remap = g.ground.restrict(t)
    cx = ForbiddenComplex(GroundSet(sub.labels), (sub.full,))
    return restrict_graph(g, cx, remap, t.bit_count() - 1)


def reconnected_complement(g: DeltaGraph, t: FaceSet) -> DeltaGraph:
    """G/t on the link of t: old edges among survivors plus reconnections through t."""
    if not g.is_tube(t):
        raise PreconditionError("reconnected complement needs a tube")
    lk = cc.link(g.complex, t)
    keep = g.ground.mask(lk.ground.labels)
    _, remap = g.ground.restrict(keep)
    base = restrict_graph(g, lk, remap, g.dim - t.bit_count())
    adj = list(base.adjacency)
    touching = [remap[i] for i in iter_bits(g.neighbors(t) & keep)]
    for a, b in combinations(touching, 2):
        if _edge_allowed(lk, (1 << a) | (1 << b)):
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return DeltaGraph(lk, tuple(adj), base.dim)


def exclusive_neighborhood(g: DeltaGraph, t: FaceSet) -> int:
    return g.neighbors(t)


def neighborless_complement(g: DeltaGraph, t: FaceSet) -> DeltaGraph:
    """(G/t) with the exclusive neighbourhood of t deleted."""
    rc = reconnected_complement(g, t)
    xn_labels = [lab for lab in g.labels_of(exclusive_neighborhood(g, t)) if rc.ground.has_label(lab)]
    return delete_vertices(rc, rc.ground.mask(xn_labels))


# --------------------------------------------------------------------------
# building sets and nested sets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BuildingSet:
    complex: ForbiddenComplex
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.sets), key=canonical_key))
        object.__setattr__(self, "sets", ordered)
        problem = building_set_violation(self.complex, ordered)
        if problem:
            raise InputError(problem)

    def label_sets(self) -> set[frozenset]:
        return {frozenset(self.complex.labels_of(s)) for s in self.sets}


def building_set_violation(cx: ForbiddenComplex, sets: Sequence[int]) -> str:
    members = set(sets)
    for s in members:
        if not s or not cx._is_face(s):
            return "building set members must be nonempty faces"
    for i in range(cx.size):
        if (1 << i) not in members:
            return f"missing singleton {cx.ground.labels[i]!r}"
    for a, b in combinations(members, 2):
        if a & b and cx._is_face(a | b) and (a | b) not in members:
            return "not closed under unions of intersecting members"
    return ""


def building_set_closure(cx: ForbiddenComplex, generators: Iterable[int]) -> BuildingSet:
    """Smallest building set containing ``generators`` and all singletons (fixed-point iteration)."""
    current = {1 << i for i in range(cx.size)} | {g for g in generators if g}
    while True:
        added = set()
        items = list(current)
        for a, b in combinations(items, 2):
            u = a | b
            if a & b and u not in current and cx._is_face(u):
                added.add(u)
        if not added:
            return BuildingSet(cx, tuple(current))
        current |= added


def graphic_building_set(g: DeltaGraph) -> BuildingSet:
    return BuildingSet(g.complex, g.tubes())


def building_set_pseudolink(b: BuildingSet, s: FaceSet) -> BuildingSet:
    """The building set B/S on the link of S."""
    if s not in b.sets:
        raise PreconditionError("S must belong to the building set")
    cx = b.complex
    lk = cc.link(cx, s)
    keep = cx.ground.mask(lk.ground.labels)
    _, remap = cx.ground.restrict(keep)
    out = set()
    for x in b.sets:
        if not x & s and cx._is_face(x | s):
            out.add(cc.remap_mask(x, remap))
        elif x & s == s and x != s:
            rest = x & ~s
            if rest & keep == rest:
                out.add(cc.remap_mask(rest, remap))
    return BuildingSet(lk, tuple(out))


def is_nested_set(b: BuildingSet, family: Iterable[int]) -> bool:
    """Nested-set test: no two members overlap properly, and every disjoint
    subfamily of two or more members has a union that is a face outside B."""
    family = list(dict.fromkeys(family))
    members = set(b.sets)
    for s in family:
        if s not in members:
            return False
    for a, c in combinations(family, 2):
        if a & c and a & c != a and a & c != c:
            return False
    k = len(family)

    def rec(start: int, union: int, count: int) -> bool:
        if count >= 2 and (union in members or not b.complex._is_face(union)):
            return False
        for i in range(start, k):
            f = family[i]
            if not f & union and not rec(i + 1, union | f, count + 1):
                return False
        return True

    return rec(0, 0, 0)


def iter_nested_sets(b: BuildingSet) -> Iterator[tuple[int, ...]]:
    """All nested sets by extension in canonical order, checked with the nested-set test."""
    sets = b.sets

    def rec(start: int, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield chosen
        for i in range(start, len(sets)):
            cand = chosen + (sets[i],)
            if is_nested_set(b, cand):
                yield from rec(i + 1, cand)

    yield from rec(0, ())


# --------------------------------------------------------------------------
# structural decompositions
# --------------------------------------------------------------------------

def link_product_counts(g: DeltaGraph, t: FaceSet) -> list[int]:
    """f(G|_t) * f(G/t): the link of {t} predicted by the facet-product theorem."""
    return poly_trim(poly_mul(f_polynomial(induced_simplex_graph(g, t)), f_polynomial(reconnected_complement(g, t))))


def link_decomposition_check(g: DeltaGraph, t: FaceSet) -> bool:
    return tube_link_counts(g, t) == link_product_counts(g, t)


def intset(g: DeltaGraph, x: FaceSet) -> list[int]:
    return [t for t in g.tubes() if t & x]


def kingmaker_witness(g: DeltaGraph, x: FaceSet) -> tuple[int, int] | None:
    """A pair of compatible, non-nested tubes meeting X, or None if X is a kingmaker."""
    data = g._tube_data
    hits = [t for t in data.tubes if t & x]
    for a, b in combinations(hits, 2):
        if a & b == a or a & b == b:
            continue
        if data.compat[data.index[a]] >> data.index[b] & 1:
            return (a, b)
    return None


def is_kingmaker(g: DeltaGraph, x: FaceSet) -> bool:
    return kingmaker_witness(g, x) is None


@dataclass(frozen=True)
class KingmakerResult:
    valid: bool
    witness: tuple[int, int] | None
    decomposed: FVector | None
    direct: FVector
    terms: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...] = ()

    @property
    def matches(self) -> bool:
        return self.valid and self.decomposed is not None and self.decomposed.complex() == self.direct.complex()


def kingmaker_decomposition(g: DeltaGraph, x: FaceSet) -> tuple[list[int], list[tuple[int, tuple[int, ...], tuple[int, ...]]]]:
    """f(G\\X) + s * sum over tubes t meeting X of f(G|_t) f(neighborless(t))."""
    total = f_polynomial(delete_vertices(g, x))
    terms = []
    for t in intset(g, x):
        a = f_polynomial(induced_simplex_graph(g, t))
        b = f_polynomial(neighborless_complement(g, t))
        terms.append((t, tuple(a), tuple(b)))
        total = poly_add(total, [0] + poly_mul(a, b))
    return poly_trim(total), terms


def kingmaker_check(g: DeltaGraph, x: FaceSet) -> KingmakerResult:
    g.complex.check_mask(x)
    direct = fvector(g)
    witness = kingmaker_witness(g, x)
    if witness is not None:
        return KingmakerResult(False, witness, None, direct)
    total, terms = kingmaker_decomposition(g, x)
    return KingmakerResult(True, None, FVector.from_complex(total, g.dim), direct, tuple(terms))


# --------------------------------------------------------------------------
# edge-subtree Δ-graphs
# --------------------------------------------------------------------------

def subtree_delta_graph(base_edges: Sequence[tuple[Label, Label]]) -> DeltaGraph:
    """Ground = edges of ``base``; circuits = simple cycles; adjacency = line graph."""
    import networkx as nx

    edges = [tuple(e) for e in base_edges]
    if len(edges) > cc.MAX_GROUND:
        raise CapacityError("base graph has more than 64 edges")
    base = nx.Graph()
    base.add_edges_from(edges)
    keys = [frozenset(e) for e in edges]
    if len(set(keys)) != len(keys):
        raise InputError("base graph edges must be distinct")
    index = {k: i for i, k in enumerate(keys)}
    labels = tuple(f"{a}-{b}" for a, b in edges)
    circuits = []
    for cycle in nx.simple_cycles(base):
        if len(cycle) < 3:
            continue
        mask = 0
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            mask |= 1 << index[frozenset((a, b))]
        circuits.append(mask)
    cx = ForbiddenComplex.create(GroundSet(labels), circuits)
    adj = [0] * len(edges)
    for i, j in combinations(range(len(edges)), 2):
        if keys[i] & keys[j]:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return DeltaGraph(cx, tuple(adj), -1, "subtree")


# --------------------------------------------------------------------------
# relabelling and JSON
# --------------------------------------------------------------------------

def permute(g: DeltaGraph, perm: Sequence[int]) -> DeltaGraph:
    """Move element i to position perm[i]; labels travel with their elements."""
    n = g.size
    if sorted(perm) != list(range(n)):
        raise InputError("not a permutation")
    labels = [None] * n
    pairing = [-1] * n
    for i in range(n):
        labels[perm[i]] = g.ground.labels[i]
        p = g.ground.pairing[i]
        pairing[perm[i]] = perm[p] if p >= 0 else -1
    ground = GroundSet(tuple(labels), tuple(pairing))
    circuits = cc.minimize(cc.remap_mask(c, perm) for c in g.complex.circuits)
    adj = [0] * n
    for i, nb in enumerate(g.adjacency):
        adj[perm[i]] = cc.remap_mask(nb, perm)
    return DeltaGraph(ForbiddenComplex(ground, circuits), tuple(adj), g.dim, g.name)


def graph_from_json(obj: Mapping) -> DeltaGraph:
    if not isinstance(obj, Mapping):
        raise MalformedFileError("graph spec must be a JSON object")
    if "complex" in obj:
        cx = cc.complex_from_json(obj["complex"])
    elif "hypercube" in obj:
        cx = cc.complex_from_json({k: obj[k] for k in ("hypercube", "rays") if k in obj})
    else:
        raise MalformedFileError("graph spec needs 'hypercube' or 'complex'")
    raw = obj.get("edges", [])
    try:
        edges = [(cc.parse_label(a), cc.parse_label(b)) for a, b in raw]
        dim = obj.get("dim", -1)
        return DeltaGraph.from_edges(cx, edges, dim=dim)
    except (TypeError, ValueError) as exc:
        raise MalformedFileError(f"bad edge list: {exc}") from None


def graph_to_json(g: DeltaGraph) -> dict:
    return {
        "complex": cc.complex_to_json(g.complex),
        "edges": [[str(a), str(b)] for a, b in g.edge_labels()],
        "dim": g.dim,
    }

"""Named Δ-graph families, tables of their f-vectors, and the type A c-cluster maps."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from . import complex_core as cc
from .delta_graph import DeltaGraph, FVector, delete_vertices, fvector, subtree_delta_graph
from .errors import CapacityError, InputError, UnknownFamilyError

Edge = tuple[int, int]


# --------------------------------------------------------------------------
# simple base graphs on [n]
# --------------------------------------------------------------------------

def path_edges(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(1, n)]


def cycle_edges(n: int) -> list[Edge]:
    if n < 2:
        return []
    if n == 2:
        return [(1, 2)]
    return path_edges(n) + [(n, 1)]


def complete_edges(n: int) -> list[Edge]:
    return list(combinations(range(1, n + 1), 2))


def star_edges(n: int) -> list[Edge]:
    """Star on [n] centred at 1 (the graph K_{n-1,1})."""
    return [(1, i) for i in range(2, n + 1)]


def empty_edges(n: int) -> list[Edge]:
    return []


BASE_GRAPHS: dict[str, Callable[[int], list[Edge]]] = {
    "path": path_edges,
    "cycle": cycle_edges,
    "complete": complete_edges,
    "star": star_edges,
    "empty": empty_edges,
}


def base_edges(base: str, n: int) -> list[Edge]:
    try:
        return BASE_GRAPHS[base](n)
    except KeyError:
        raise UnknownFamilyError(f"unknown base graph {base!r}; choose from {sorted(BASE_GRAPHS)}") from None


def walk_edges(walk: Sequence[int], closed: bool = False) -> list[Edge]:
    edges = list(zip(walk, walk[1:]))
    if closed and len(walk) > 2:
        edges.append((walk[-1], walk[0]))
    return edges


# --------------------------------------------------------------------------
# family identifiers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyId:
    """A family member.

    ``n`` is the hypercube dimension for hypercube families and their vertex
    deletions, and the vertex count for simplex families.  ``base`` names the
    underlying graph of omni- and subtree families; ``j`` is the clique size of
    a wand graph whose path part has ``n`` vertices.
    """

    name: str
    n: int
    base: str | None = None
    j: int = 0

    def __str__(self) -> str:
        if self.name == "wand":
            return f"wand({self.j},{self.n})"
        if self.base:
            return f"{self.name}({self.base})[{self.n}]"
        return f"{self.name}[{self.n}]"


def _hyper(n: int, edges: Iterable[Edge], name: str) -> DeltaGraph:
    if n < 0:
        raise InputError("dimension must be nonnegative")
    return DeltaGraph.from_edges(cc.hypercube(n), edges, dim=n, name=name, skip_nonfaces=True)


def _simplex(m: int, edges: Iterable[Edge], name: str) -> DeltaGraph:
    if m < 0:
        raise InputError("vertex count must be nonnegative")
    cx = cc.simplex(list(range(1, m + 1)))
    if m <= 1:
        return DeltaGraph(cx, (0,) * cx.size, 0, name)
    return DeltaGraph.from_edges(cx, edges, dim=m - 1, name=name)


def _double(edges: Iterable[Edge]) -> list[Edge]:
    edges = list(edges)
    return edges + [(-a, -b) for a, b in edges]


def _omni(edges: Iterable[Edge]) -> list[Edge]:
    out = []
    for a, b in edges:
        out += [(a, b), (a, -b), (-a, b), (-a, -b)]
    return out


def _require_n(n: int, minimum: int) -> None:
    if n < minimum:
        raise InputError(f"this family needs n >= {minimum}")


def double_path(n: int) -> DeltaGraph:
    return _hyper(n, _double(path_edges(n)), "double-path")


def missing_vertex_double_path(n: int) -> DeltaGraph:
    _require_n(n, 1)
    g = double_path(n)
    return delete_vertices(g, g.mask([-1]), "missing-vertex-double-path")


def trans_double_path(n: int) -> DeltaGraph:
    _require_n(n, 1)
    g = double_path(n)
    return delete_vertices(g, g.mask({-1, n}), "trans-double-path")


def cis_double_path(n: int) -> DeltaGraph:
    _require_n(n, 1)
    g = double_path(n)
    return delete_vertices(g, g.mask({-1, -n}), "cis-double-path")


def _twisted(n: int, closed: bool) -> list[Edge]:
    walk = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    return walk_edges(walk, closed)


def _near_double_path(n: int) -> list[Edge]:
    if n < 1:
        return []
    return walk_edges(list(range(1, n + 1)) + [-1]) + walk_edges([-i for i in range(2, n + 1)])


def _pell(n: int) -> list[Edge]:
    return [(i, -(i + 1)) for i in range(1, n)]


def _full(n: int) -> list[Edge]:
    labels = [s * i for i in range(1, n + 1) for s in (1, -1)]
    return [(a, b) for a, b in combinations(labels, 2) if a != -b]


def _simplex_star(m: int) -> list[Edge]:
    """K_{m-1,1} on [m] with centre m."""
    return [(i, m) for i in range(1, m)]


def wand_edges(j: int, k: int) -> list[Edge]:
    return complete_edges(j) + [(i, i + 1) for i in range(max(j, 1), j + k)]


def wand(j: int, k: int) -> DeltaGraph:
    if j < 0 or k < 0:
        raise InputError("wand parameters must be nonnegative")
    return _simplex(j + k, wand_edges(j, k), "wand")


_HYPERCUBE_FAMILIES: dict[str, Callable[[int], list[Edge]]] = {
    "path-plus": path_edges,
    "cycle-plus": cycle_edges,
    "complete-plus": complete_edges,
    "star-plus": star_edges,
    "double-path": lambda n: _double(path_edges(n)),
    "double-cycle": lambda n: _double(cycle_edges(n)),
    "double-complete": lambda n: _double(complete_edges(n)),
    "double-star": lambda n: _double(star_edges(n)),
    "twisted-path": lambda n: _twisted(n, False),
    "twisted-cycle": lambda n: _twisted(n, True),
    "pell": _pell,
    "companion-pell": lambda n: _pell(n) + [(-1, n)],
    "near-double-path": _near_double_path,
    "full": _full,
    "empty": empty_edges,
}

_SIMPLEX_FAMILIES: dict[str, Callable[[int], list[Edge]]] = {
    "simplex-path": path_edges,
    "simplex-cycle": cycle_edges,
    "simplex-complete": complete_edges,
    "simplex-star": _simplex_star,
}

_DELETION_FAMILIES: dict[str, Callable[[int], DeltaGraph]] = {
    "missing-vertex-double-path": missing_vertex_double_path,
    "trans-double-path": trans_double_path,
    "cis-double-path": cis_double_path,
}

_MINIMUM_N = {"pell": 1, "companion-pell": 1, "twisted-path": 1, "twisted-cycle": 1}

ALIASES = {
    "halohedron": "cycle-plus",
    "associahedron": "path-plus",
    "stellohedron": "complete-plus",
    "stellocubeahedron": "star-plus",
    "permutahedron": "double-complete",
    "cube": "empty",
    "ndp": "near-double-path",
    "m": "missing-vertex-double-path",
    "t": "trans-double-path",
    "c": "cis-double-path",
}

FAMILY_NAMES: tuple[str, ...] = tuple(
    sorted([*_HYPERCUBE_FAMILIES, *_SIMPLEX_FAMILIES, *_DELETION_FAMILIES, "omni", "wand", "subtree"])
)


def canonical_name(name: str) -> str:
    key = name.strip().lower().replace("_", "-")
    key = ALIASES.get(key, key)
    if key not in FAMILY_NAMES:
        raise UnknownFamilyError(f"unknown family {name!r}")
    return key


def build(fid: FamilyId | str, n: int | None = None, base: str | None = None, j: int = 0) -> DeltaGraph:
    """Construct the Δ-graph of a family member."""
    if isinstance(fid, str):
        if n is None:
            raise InputError("a dimension is required")
        fid = FamilyId(fid, n, base, j)
    name = canonical_name(fid.name)
    n = fid.n
    if n < _MINIMUM_N.get(name, 0):
        raise InputError(f"{name} needs n >= {_MINIMUM_N[name]}")
    if name in _HYPERCUBE_FAMILIES:
        return _hyper(n, _HYPERCUBE_FAMILIES[name](n), name)
    if name in _SIMPLEX_FAMILIES:
        return _simplex(n, _SIMPLEX_FAMILIES[name](n), name)
    if name in _DELETION_FAMILIES:
        return _DELETION_FAMILIES[name](n)
    if name == "omni":
        return _hyper(n, _omni(base_edges(fid.base or "path", n)), "omni")
    if name == "wand":
        return wand(fid.j, n)
    if name == "subtree":
        edges = base_edges(fid.base or "cycle", n)
        if not edges:
            raise InputError("subtree family needs a base graph with edges")
        return subtree_delta_graph(edges)
    raise UnknownFamilyError(f"unknown family {fid.name!r}")


def family_table(
    ids: Sequence[FamilyId | str],
    n_max: int,
    n_min: int = 0,
    threads: int = 1,
    convention: str = "polyhedron",
) -> dict[str, list[tuple[int, FVector]]]:
    """f-vectors for n_min..n_max per family (skipping n below a family's minimum)."""
    cells: list[tuple[str, FamilyId]] = []
    for item in ids:
        fid = FamilyId(item, 0) if isinstance(item, str) else item
        name = canonical_name(fid.name)
        lo = max(n_min, _MINIMUM_N.get(name, 0), 1 if name in _DELETION_FAMILIES else 0)
        for n in range(lo, n_max + 1):
            cells.append((str(fid.name if fid.base is None and not fid.j else fid), FamilyId(name, n, fid.base, fid.j)))

    def run(cell: tuple[str, FamilyId]) -> tuple[str, int, FVector]:
        key, fid = cell
        try:
            return key, fid.n, fvector(build(fid)).to(convention)
        except CapacityError as exc:
            raise CapacityError(f"{fid}: {exc}") from None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(c) for c in cells]
    table: dict[str, list[tuple[int, FVector]]] = {}
    for key, n, fv in results:
        table.setdefault(key, []).append((n, fv))
    return table


# --------------------------------------------------------------------------
# type A c-cluster compatibility (linear Coxeter element)
# --------------------------------------------------------------------------

Root = tuple[int, ...]


def beta(n: int, i: int, j: int) -> Root:
    if not 1 <= i <= j <= n:
        raise InputError(f"no positive root beta[{i},{j}] in rank {n}")
    return tuple(1 if i <= k <= j else 0 for k in range(1, n + 1))


def neg_simple(n: int, i: int) -> Root:
    if not 1 <= i <= n:
        raise InputError(f"no simple root alpha[{i}] in rank {n}")
    return tuple(-1 if k == i else 0 for k in range(1, n + 1))


def root_kind(root: Root) -> tuple[str, int, int]:
    """('neg', i, i) for -alpha_i or ('pos', i, j) for beta_{i,j}."""
    support = [k + 1 for k, c in enumerate(root) if c]
    if len(support) == 1 and root[support[0] - 1] == -1:
        return ("neg", support[0], support[0])
    if support and all(root[k - 1] == 1 for k in support) and support == list(range(support[0], support[-1] + 1)):
        return ("pos", support[0], support[-1])
    raise InputError(f"{root} is not an almost positive root of type A")


def tube_to_root(n: int, tube: Iterable[int]) -> Root:
    """Tubes of the single path hypercube graph: [i,j] -> beta_{i,j}, {-i} -> -alpha_i."""
    members = sorted(tube)
    if len(members) == 1 and members[0] < 0:
        return neg_simple(n, -members[0])
    if members and members[0] > 0 and members == list(range(members[0], members[-1] + 1)):
        return beta(n, members[0], members[-1])
    raise InputError(f"{members} is not a tube of the single path graph")


def root_to_tube(root: Root) -> tuple[int, ...]:
    kind, i, j = root_kind(root)
    return (-i,) if kind == "neg" else tuple(range(i, j + 1))


def diagonals(n: int) -> list[tuple[int, int]]:
    """Diagonals D_{i,j} of the (n+3)-gon with vertices 0..n+2, excluding D_{0,n+2}."""
    return [(i, j) for i in range(n + 3) for j in range(i + 2, n + 3) if (i, j) != (0, n + 2)]


def _check_diagonal(n: int, d: tuple[int, int]) -> None:
    i, j = d
    if not (0 <= i and i + 2 <= j <= n + 2) or (i, j) == (0, n + 2):
        raise InputError(f"D[{i},{j}] is not a diagonal of the {n + 3}-gon")


def diagonal_to_root(n: int, d: tuple[int, int]) -> Root:
    _check_diagonal(n, d)
    i, j = d
    if j == n + 2:
        return neg_simple(n, i)
    return beta(n, i + 1, j - 1)


def diagonal_crossing(n: int, d1: tuple[int, int], d2: tuple[int, int]) -> bool:
    """Strict interleaving of endpoints."""
    _check_diagonal(n, d1)
    _check_diagonal(n, d2)
    (a, b), (c, d) = d1, d2
    return a < c < b < d or c < a < d < b


def tau(n: int, root: Root) -> Root:
    """The rotation on almost positive roots for the linear Coxeter element."""
    kind, i, j = root_kind(root)
    if kind == "neg":
        return beta(n, 1, i)
    if j == n:
        return neg_simple(n, i)
    return beta(n, i + 1, j + 1)


def c_compatible(n: int, r1: Root, r2: Root) -> bool:
    """Compatibility by rotating until one root is negative simple."""
    for _ in range(n + 4):
        k1, i1, _j1 = root_kind(r1)
        k2, i2, _j2 = root_kind(r2)
        if k1 == "neg" and k2 == "neg":
            return True
        if k1 == "neg":
            return r2[i1 - 1] == 0
        if k2 == "neg":
            return r1[i2 - 1] == 0
        r1, r2 = tau(n, r1), tau(n, r2)
    raise AssertionError("rotation did not reach a negative simple root")


def root_to_diagonal(n: int, root: Root) -> tuple[int, int]:
    kind, i, j = root_kind(root)
    return (i, n + 2) if kind == "neg" else (i - 1, j + 1)

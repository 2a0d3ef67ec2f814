"""Simplicial complexes stored by their minimal non-faces.

Subsets of the ground set are plain ``int`` bitsets (bit ``i`` is ground
element ``i``).  A complex is the list of its circuits, i.e. the minimal
subsets that are *not* faces; every other operation is derived from that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import CapacityError, InputError, MalformedFileError, PreconditionError

Label = Union[int, str]
FaceSet = int

MAX_GROUND = 64


# --------------------------------------------------------------------------
# bit helpers
# --------------------------------------------------------------------------

def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key used everywhere: by size, then by bitset value."""
    return (mask.bit_count(), mask)


def minimize(sets: Iterable[int]) -> tuple[int, ...]:
    """Drop every set that contains another one; return them canonically sorted."""
    ordered = sorted(set(sets), key=canonical_key)
    kept: list[int] = []
    for s in ordered:
        if not any(k & s == k for k in kept):
            kept.append(s)
    return tuple(kept)


# --------------------------------------------------------------------------
# ground sets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GroundSet:
    """Labelled base elements with an optional opposite-element involution.

    ``pairing[i]`` is the index of the opposite of element ``i`` or ``-1``
    for an unpaired (ray) element.
    """

    labels: tuple[Label, ...]
    pairing: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.pairing:
            object.__setattr__(self, "pairing", (-1,) * len(self.labels))
        if len(self.labels) > MAX_GROUND:
            raise CapacityError(f"ground set has {len(self.labels)} > {MAX_GROUND} elements")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("ground labels must be distinct")
        if len(self.pairing) != len(self.labels):
            raise InputError("pairing length must match label count")
        for i, j in enumerate(self.pairing):
            if j == -1:
                continue
            if not 0 <= j < len(self.labels) or j == i or self.pairing[j] != i:
                raise InputError("pairing must be a fixed-point-free involution")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict[Label, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown ground label {label!r}") from None

    def has_label(self, label: Label) -> bool:
        return label in self._index

    def mask(self, labels: Iterable[Label]) -> int:
        return bits_to_mask(self.index(lab) for lab in labels)

    def labels_of(self, mask: int) -> tuple[Label, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def opposite(self, i: int) -> int:
        return self.pairing[i]

    def restrict(self, keep: int) -> tuple["GroundSet", list[int]]:
        """Sub-ground on the elements of ``keep``; returns it with old->new index map (-1 = dropped)."""
        remap = [-1] * self.size
        labels: list[Label] = []
        for i in range(self.size):
            if keep >> i & 1:
                remap[i] = len(labels)
                labels.append(self.labels[i])
        pairing = []
        for i in range(self.size):
            if remap[i] < 0:
                continue
            j = self.pairing[i]
            pairing.append(remap[j] if j >= 0 and remap[j] >= 0 else -1)
        return GroundSet(tuple(labels), tuple(pairing)), remap


def remap_mask(mask: int, remap: Sequence[int]) -> int:
    out = 0
    for i in iter_bits(mask):
        j = remap[i]
        if j < 0:
            raise InputError("mask uses an element outside the target ground set")
        out |= 1 << j
    return out


# --------------------------------------------------------------------------
# complexes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ForbiddenComplex:
    """A simplicial complex given by its circuits (minimal non-faces)."""

    ground: GroundSet
    circuits: tuple[int, ...]

    def __post_init__(self) -> None:
        full = self.ground.full
        for c in self.circuits:
            if c & ~full:
                raise InputError("circuit uses an element outside the ground set")
            if c.bit_count() < 2:
                raise InputError("circuits must have at least two elements")
        if tuple(minimize(self.circuits)) != tuple(self.circuits):
            raise InputError("circuits must be minimal and canonically ordered")

    @classmethod
    def create(cls, ground: GroundSet, circuits: Iterable[int]) -> "ForbiddenComplex":
        """Minimize and sort ``circuits``; elements that are non-faces are dropped from the ground."""
        circuits = minimize(circuits)
        bad = 0
        for c in circuits:
            if c.bit_count() == 1:
                bad |= c
        if bad:
            sub, remap = ground.restrict(ground.full & ~bad)
            circuits = minimize(remap_mask(c, remap) for c in circuits if not c & bad)
            ground = sub
        return cls(ground, circuits)

    # -- basic queries ------------------------------------------------------

    @property
    def size(self) -> int:
        return self.ground.size

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask & ~self.ground.full:
            raise InputError("set has elements outside the ground set")

    def is_face(self, mask: FaceSet) -> bool:
        self.check_mask(mask)
        return self._is_face(mask)

    def _is_face(self, mask: int) -> bool:
        for c in self.circuits:
            if c & mask == c:
                return False
        return True

    @cached_property
    def _circuits_by_top(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.size)]
        for c in self.circuits:
            buckets[c.bit_length() - 1].append(c)
        return tuple(tuple(b) for b in buckets)

    def faces(self) -> Iterator[int]:
        """All faces (including the empty face) by depth-first search."""
        by_top = self._circuits_by_top
        n = self.size

        def rec(face: int, start: int) -> Iterator[int]:
            yield face
            for x in range(start, n):
                new = face | (1 << x)
                if any(c & new == c for c in by_top[x]):
                    continue
                yield from rec(new, x + 1)

        yield from rec(0, 0)

    def face_counts(self) -> list[int]:
        counts: list[int] = []
        for f in self.faces():
            k = f.bit_count()
            while len(counts) <= k:
                counts.append(0)
            counts[k] += 1
        return counts

    @cached_property
    def rank(self) -> int:
        return rank(self)

    def is_flag(self) -> bool:
        return all(c.bit_count() == 2 for c in self.circuits)

    def labels_of(self, mask: int) -> tuple[Label, ...]:
        return self.ground.labels_of(mask)

    def mask(self, labels: Iterable[Label]) -> int:
        return self.ground.mask(labels)

    def face_label_sets(self) -> set[frozenset]:
        return {frozenset(self.labels_of(f)) for f in self.faces()}


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------

def hypercube_ground(n: int, rays: int = 0) -> GroundSet:
    """Labels 1,-1,2,-2,...,n,-n followed by unpaired ray labels n+1..n+rays."""
    labels: list[Label] = []
    pairing: list[int] = []
    for i in range(1, n + 1):
        labels += [i, -i]
        pairing += [2 * i - 1, 2 * i - 2]
    for r in range(rays):
        labels.append(n + 1 + r)
        pairing.append(-1)
    return GroundSet(tuple(labels), tuple(pairing))


def hypercube(n: int, rays: int = 0) -> ForbiddenComplex:
    """Dual complex of the n-cube (times ``rays`` rays): circuits {i,-i}."""
    if n < 0 or rays < 0:
        raise InputError("hypercube dimension and ray count must be nonnegative")
    ground = hypercube_ground(n, rays)
    return ForbiddenComplex(ground, tuple(3 << (2 * i) for i in range(n)))


def simplex(labels: Sequence[Label]) -> ForbiddenComplex:
    """Boundary complex of a simplex whose facets are ``labels``: the single circuit is everything.

    With fewer than two labels the result has an empty ground (a point).
    """
    if len(labels) < 2:
        return ForbiddenComplex(GroundSet(()), ())
    ground = GroundSet(tuple(labels))
    return ForbiddenComplex(ground, (ground.full,))


def boolean(labels: Sequence[Label]) -> ForbiddenComplex:
    """Every subset is a face (a product of rays)."""
    return ForbiddenComplex(GroundSet(tuple(labels)), ())


def point() -> ForbiddenComplex:
    return ForbiddenComplex(GroundSet(()), ())


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def is_face(cx: ForbiddenComplex, face: FaceSet) -> bool:
    return cx.is_face(face)


def restrict_ground(cx: ForbiddenComplex, keep: int) -> tuple[ForbiddenComplex, list[int]]:
    """Induced complex on ``keep`` (circuits inside ``keep`` survive)."""
    sub, remap = cx.ground.restrict(keep)
    circuits = minimize(remap_mask(c, remap) for c in cx.circuits if c & keep == c)
    return ForbiddenComplex(sub, circuits), remap


def link(cx: ForbiddenComplex, s: FaceSet) -> ForbiddenComplex:
    """Link of the face ``s``; elements that cannot join ``s`` are dropped."""
    cx.check_mask(s)
    if not cx._is_face(s):
        raise PreconditionError("link is only defined for faces")
    keep = 0
    for x in range(cx.size):
        bit = 1 << x
        if not s & bit and cx._is_face(s | bit):
            keep |= bit
    sub, remap = cx.ground.restrict(keep)
    circuits = []
    for c in cx.circuits:
        rest = c & ~s
        if rest & keep == rest:
            circuits.append(remap_mask(rest, remap))
    return ForbiddenComplex(sub, minimize(circuits))


def delete(cx: ForbiddenComplex, x: FaceSet) -> ForbiddenComplex:
    """Faces avoiding ``x``, on the ground set minus ``x``."""
    cx.check_mask(x)
    keep = cx.ground.full & ~x
    sub, remap = cx.ground.restrict(keep)
    circuits = minimize(remap_mask(c, remap) for c in cx.circuits if not c & x)
    return ForbiddenComplex(sub, circuits)


def product(a: ForbiddenComplex, b: ForbiddenComplex) -> ForbiddenComplex:
    """Join of the two circuit diagrams on the disjoint union of grounds."""
    if a.size + b.size > MAX_GROUND:
        raise CapacityError("product ground exceeds 64 elements")
    taken = set(a.ground.labels)
    labels_b = list(b.ground.labels)
    if taken & set(labels_b):
        labels_b = [_fresh_label(lab, taken) for lab in labels_b]
    shift = a.size
    pairing = list(a.ground.pairing) + [p + shift if p >= 0 else -1 for p in b.ground.pairing]
    ground = GroundSet(tuple(a.ground.labels) + tuple(labels_b), tuple(pairing))
    circuits = list(a.circuits) + [c << shift for c in b.circuits]
    return ForbiddenComplex(ground, minimize(circuits))


def _fresh_label(label: Label, taken: set) -> str:
    cand = f"{label}'"
    while cand in taken:
        cand += "'"
    taken.add(cand)
    return cand


def rank(cx: ForbiddenComplex) -> int:
    """Size of a largest face (greedy start, then branch and bound)."""
    n = cx.size
    if n == 0:
        return 0
    by_top = cx._circuits_by_top
    greedy = 0
    for x in range(n):
        new = greedy | (1 << x)
        if cx._is_face(new):
            greedy = new
    best = greedy.bit_count()
    if best == n:
        return n

    def rec(face: int, x: int, size: int) -> None:
        nonlocal best
        if size + (n - x) <= best:
            return
        if x == n:
            best = size
            return
        new = face | (1 << x)
        if not any(c & new == c for c in by_top[x]):
            rec(new, x + 1, size + 1)
        rec(face, x + 1, size)

    rec(0, 0, 0)
    return best


def stellar_subdivision(cx: ForbiddenComplex, s: FaceSet, label: Label | None = None) -> ForbiddenComplex:
    """Stellar subdivision at the face ``s`` with a new element appended as the last index."""
    cx.check_mask(s)
    if not s:
        raise PreconditionError("stellar subdivision needs a nonempty face")
    if not cx._is_face(s):
        raise PreconditionError("stellar subdivision is only defined for faces")
    if cx.size + 1 > MAX_GROUND:
        raise CapacityError("subdivision would exceed 64 ground elements")
    if label is None:
        label = "h" + "".join(str(lab) for lab in cx.labels_of(s))
    if cx.ground.has_label(label):
        raise InputError(f"label {label!r} already in use")
    h = 1 << cx.size
    ground = GroundSet(cx.ground.labels + (label,), cx.ground.pairing + (-1,))
    circuits = [s] + list(cx.circuits) + [h | (c & ~s) for c in cx.circuits]
    return ForbiddenComplex.create(ground, circuits)


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def parse_label(raw) -> Label:
    if isinstance(raw, bool):
        raise MalformedFileError("labels must be integers or strings")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return int(raw)
        except ValueError:
            return raw
    raise MalformedFileError(f"bad label {raw!r}")


def complex_from_json(obj: Mapping) -> ForbiddenComplex:
    if not isinstance(obj, Mapping):
        raise MalformedFileError("complex must be a JSON object")
    if "hypercube" in obj:
        n, rays = obj["hypercube"], obj.get("rays", 0)
        if not isinstance(n, int) or not isinstance(rays, int) or n < 0 or rays < 0:
            raise MalformedFileError("hypercube and rays must be nonnegative integers")
        return hypercube(n, rays)
    try:
        labels = [parse_label(x) for x in obj["ground"]]
        raw_circuits = obj.get("circuits", [])
        pairs = obj.get("pairing")
    except (KeyError, TypeError) as exc:
        raise MalformedFileError(f"complex needs 'ground' and 'circuits': {exc}") from None
    try:
        ground = GroundSet(tuple(labels))
        if pairs:
            pairing = [-1] * len(labels)
            for a, b in pairs:
                i, j = ground.index(parse_label(a)), ground.index(parse_label(b))
                pairing[i], pairing[j] = j, i
            ground = GroundSet(tuple(labels), tuple(pairing))
        circuits = [ground.mask(parse_label(x) for x in c) for c in raw_circuits]
    except InputError as exc:
        raise MalformedFileError(str(exc)) from None
    return ForbiddenComplex.create(ground, circuits)


def complex_to_json(cx: ForbiddenComplex) -> dict:
    out: dict = {
        "ground": [str(lab) for lab in cx.ground.labels],
        "circuits": [[str(lab) for lab in cx.labels_of(c)] for c in cx.circuits],
    }
    pairs = [
        [str(cx.ground.labels[i]), str(cx.ground.labels[j])]
        for i, j in enumerate(cx.ground.pairing)
        if j > i
    ]
    if pairs:
        out["pairing"] = pairs
    return out

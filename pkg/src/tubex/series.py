"""Truncated bivariate power series with exact rational coefficients.

``coeffs[k][n]`` is the coefficient of x^k y^n (or s^k t^n).  The first
variable usually marks face dimension, the second the family index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import DomainError, InputError, UnknownFamilyError

DEFAULT_ORDER = (12, 12)
Scalar = Union[int, Fraction]


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class BivariateSeries:
    """Series truncated to x-degree <= K and y-degree <= N."""

    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.coeffs or not self.coeffs[0]:
            raise InputError("series needs at least one coefficient")
        width = len(self.coeffs[0])
        if any(len(row) != width for row in self.coeffs):
            raise InputError("ragged coefficient array")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        return cls.from_dict({}, K, N)

    @classmethod
    def constant(cls, c: Scalar, K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        return cls.from_dict({(0, 0): c}, K, N)

    @classmethod
    def one(cls, K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        return cls.constant(1, K, N)

    @classmethod
    def monomial(cls, k: int, n: int, c: Scalar = 1, K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        return cls.from_dict({(k, n): c}, K, N)

    @classmethod
    def from_dict(cls, terms: Mapping[tuple[int, int], Scalar], K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        if K < 0 or N < 0:
            raise InputError("truncation orders must be nonnegative")
        grid = [[Fraction(0)] * (N + 1) for _ in range(K + 1)]
        for (k, n), c in terms.items():
            if k < 0 or n < 0:
                raise InputError("negative exponent")
            if k <= K and n <= N:
                grid[k][n] += _frac(c)
        return cls(tuple(tuple(r) for r in grid))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        """``rows[n]`` lists the x-coefficients of y^n."""
        return cls.from_dict({(k, n): c for n, row in enumerate(rows) for k, c in enumerate(row)}, K, N)

    @classmethod
    def from_function(cls, fn: Callable[[int, int], Scalar], K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> "BivariateSeries":
        return cls(tuple(tuple(_frac(fn(k, n)) for n in range(N + 1)) for k in range(K + 1)))

    # -- shape ----------------------------------------------------------------

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    @property
    def N(self) -> int:
        return len(self.coeffs[0]) - 1

    @property
    def order(self) -> tuple[int, int]:
        return (self.K, self.N)

    def coeff(self, k: int, n: int) -> Fraction:
        if not (0 <= k <= self.K and 0 <= n <= self.N):
            raise InputError(f"coefficient ({k},{n}) outside truncation {self.order}")
        return self.coeffs[k][n]

    def row(self, n: int, upto: int | None = None) -> list[Fraction]:
        """Coefficients of y^n as a list over powers of x."""
        top = self.K if upto is None else min(upto, self.K)
        return [self.coeffs[k][n] for k in range(top + 1)]

    def truncate(self, K: int, N: int) -> "BivariateSeries":
        if K > self.K or N > self.N:
            raise InputError("cannot widen a truncated series")
        return BivariateSeries(tuple(tuple(self.coeffs[k][: N + 1]) for k in range(K + 1)))

    def _aligned(self, other: "BivariateSeries") -> tuple["BivariateSeries", "BivariateSeries"]:
        K, N = min(self.K, other.K), min(self.N, other.N)
        return self.truncate(K, N), other.truncate(K, N)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {(k, n): c for k, row in enumerate(self.coeffs) for n, c in enumerate(row) if c}

    # -- ring operations ------------------------------------------------------

    def _lift(self, other) -> "BivariateSeries":
        if isinstance(other, BivariateSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return BivariateSeries.constant(other, self.K, self.N)
        return NotImplemented

    def __add__(self, other) -> "BivariateSeries":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._aligned(other)
        return BivariateSeries(tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries(tuple(tuple(-x for x in r) for r in self.coeffs))

    def __sub__(self, other) -> "BivariateSeries":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "BivariateSeries":
        return (-self) + other

    def scale(self, c: Scalar) -> "BivariateSeries":
        c = _frac(c)
        return BivariateSeries(tuple(tuple(x * c for x in r) for r in self.coeffs))

    def __mul__(self, other) -> "BivariateSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        a, b = self._aligned(other)
        K, N = a.K, a.N
        out = [[Fraction(0)] * (N + 1) for _ in range(K + 1)]
        bt = b.terms()
        for (i, j), x in a.terms().items():
            for (k, n), y in bt.items():
                if i + k <= K and j + n <= N:
                    out[i + k][j + n] += x * y
        return BivariateSeries(tuple(tuple(r) for r in out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BivariateSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = BivariateSeries.one(self.K, self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "BivariateSeries":
        """Multiplicative inverse by coefficient recurrence."""
        c0 = self.coeffs[0][0]
        if c0 == 0:
            raise DomainError("series with zero constant term has no inverse")
        K, N = self.K, self.N
        a = self.terms()
        a.pop((0, 0), None)
        inv0 = 1 / c0
        b = [[Fraction(0)] * (N + 1) for _ in range(K + 1)]
        b[0][0] = inv0
        for total in range(1, K + N + 1):
            for k in range(max(0, total - N), min(K, total) + 1):
                n = total - k
                acc = Fraction(0)
                for (i, j), x in a.items():
                    if i <= k and j <= n:
                        acc += x * b[k - i][n - j]
                b[k][n] = -acc * inv0
        return BivariateSeries(tuple(tuple(r) for r in b))

    def __truediv__(self, other) -> "BivariateSeries":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DomainError("division by zero")
            return self.scale(Fraction(1) / _frac(other))
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "BivariateSeries":
        return self._lift(other) * self.inverse()

    def sqrt(self) -> "BivariateSeries":
        """Square root with a rational constant term, by Newton iteration."""
        c0 = self.coeffs[0][0]
        if c0 <= 0:
            raise DomainError("square root needs a positive constant term")
        p, q = c0.numerator, c0.denominator
        rp, rq = isqrt(p), isqrt(q)
        if rp * rp != p or rq * rq != q:
            raise DomainError(f"constant term {c0} is not a rational square")
        s = BivariateSeries.constant(Fraction(rp, rq), self.K, self.N)
        half = Fraction(1, 2)
        for _ in range((self.K + self.N + 1).bit_length() + 2):
            nxt = (s + self / s).scale(half)
            if nxt == s:
                break
            s = nxt
        return s

    # -- differential and weighting operators ---------------------------------

    def d_x(self) -> "BivariateSeries":
        if self.K == 0:
            return BivariateSeries.zero(0, self.N)
        return BivariateSeries(tuple(tuple((k + 1) * c for c in self.coeffs[k + 1]) for k in range(self.K)))

    def d_y(self) -> "BivariateSeries":
        if self.N == 0:
            return BivariateSeries.zero(self.K, 0)
        return BivariateSeries(tuple(tuple((n + 1) * r[n + 1] for n in range(self.N)) for r in self.coeffs))

    def x_d_x(self) -> "BivariateSeries":
        return BivariateSeries(tuple(tuple(k * c for c in r) for k, r in enumerate(self.coeffs)))

    def y_d_y(self) -> "BivariateSeries":
        return BivariateSeries(tuple(tuple(n * c for n, c in enumerate(r)) for r in self.coeffs))

    def shift_y(self, m: int) -> "BivariateSeries":
        """Multiply by y^m (m >= 0) or divide by y^(-m) when the low rows vanish."""
        N = self.N
        if m >= 0:
            return BivariateSeries(tuple(tuple([Fraction(0)] * min(m, N + 1) + list(r[: max(0, N + 1 - m)])) for r in self.coeffs))
        m = -m
        for r in self.coeffs:
            if any(r[:m]):
                raise DomainError("series is not divisible by that power of y")
        return BivariateSeries(tuple(tuple(r[m:]) for r in self.coeffs))

    def shift_x(self, m: int) -> "BivariateSeries":
        K = self.K
        zero_row = tuple([Fraction(0)] * (self.N + 1))
        rows = [zero_row] * min(m, K + 1) + list(self.coeffs[: max(0, K + 1 - m)])
        return BivariateSeries(tuple(rows))

    def at_x0(self) -> "BivariateSeries":
        return BivariateSeries((self.coeffs[0],))

    def at_y0(self) -> "BivariateSeries":
        return BivariateSeries(tuple((r[0],) for r in self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        if self.order != other.order:
            a, b = self._aligned(other)
            return a.coeffs == b.coeffs
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_json(self) -> list[list[str]]:
        """Rows over y, each listing x-coefficients as decimal strings."""
        return [[str(self.coeffs[k][n]) for k in range(self.K + 1)] for n in range(self.N + 1)]

    def triangle(self) -> list[list[str]]:
        """Rows over y truncated to k <= n (the face-count triangle)."""
        return [[str(self.coeffs[k][n]) for k in range(min(n, self.K) + 1)] for n in range(self.N + 1)]


# --------------------------------------------------------------------------
# weight functions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFunction:
    """r(n): a polynomial, a shifted delta, or sums and products of those."""

    kind: str
    coeffs: tuple[Fraction, ...] = ()
    shift: int = 0
    parts: tuple["WeightFunction", ...] = ()

    @classmethod
    def poly(cls, *coeffs: Scalar) -> "WeightFunction":
        return cls("poly", tuple(_frac(c) for c in coeffs) or (Fraction(0),))

    @classmethod
    def delta(cls, i: int = 0) -> "WeightFunction":
        """delta(n - i)."""
        return cls("delta", shift=i)

    @classmethod
    def identity(cls) -> "WeightFunction":
        return cls.poly(0, 1)

    def __add__(self, other: "WeightFunction") -> "WeightFunction":
        return WeightFunction("sum", parts=(self, other))

    def __mul__(self, other: "WeightFunction") -> "WeightFunction":
        return WeightFunction("product", parts=(self, other))

    def __call__(self, n: int) -> Fraction:
        if self.kind == "poly":
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * n + c
            return acc
        if self.kind == "delta":
            return Fraction(1 if n == self.shift else 0)
        if self.kind == "sum":
            return sum((p(n) for p in self.parts), Fraction(0))
        if self.kind == "product":
            acc = Fraction(1)
            for p in self.parts:
                acc *= p(n)
            return acc
        raise InputError(f"unknown weight kind {self.kind!r}")


def apply_weight(a: BivariateSeries, r: WeightFunction, on: str = "y") -> BivariateSeries:
    if on == "y":
        return BivariateSeries(tuple(tuple(r(n) * c for n, c in enumerate(row)) for row in a.coeffs))
    if on == "x":
        return BivariateSeries(tuple(tuple(r(k) * c for c in row) for k, row in enumerate(a.coeffs)))
    raise InputError("weight applies to 'x' or 'y'")


# --------------------------------------------------------------------------
# change of variables
# --------------------------------------------------------------------------

def dual_transform(a: BivariateSeries, direction: str = "to_complex") -> BivariateSeries:
    """Mirror each row: coeffs[k][n] <-> coeffs[n-k][n], on the square window min(K, N)."""
    if direction not in ("to_complex", "to_polyhedron"):
        raise InputError("direction is 'to_complex' or 'to_polyhedron'")
    m = min(a.K, a.N)
    for k in range(m + 1):
        for n in range(k):
            if a.coeffs[k][n]:
                raise InputError(f"coefficient x^{k} y^{n} lies outside the triangle k <= n")
    out = [[a.coeffs[n - k][n] if k <= n else Fraction(0) for n in range(m + 1)] for k in range(m + 1)]
    return BivariateSeries(tuple(tuple(r) for r in out))


# --------------------------------------------------------------------------
# family generating functions
# --------------------------------------------------------------------------

def _xy(K: int, N: int) -> tuple[BivariateSeries, BivariateSeries]:
    return BivariateSeries.monomial(1, 0, 1, K, N), BivariateSeries.monomial(0, 1, 1, K, N)


def associahedra(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    """f^A from its algebraic closed form; numerator taken two orders deeper, then shifted."""
    x, y = _xy(K, N + 2)
    q = (x * x * y * y - (x + 2) * y * 2 + 1).sqrt()
    num = 1 - (x + 2) * y - q
    return (num.shift_y(-2) / (x + 1).truncate(K, N)).scale(Fraction(1, 2))


def cyclohedra(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    x, y = _xy(K, N)
    return (x * x * y * y - x * y * 2 - y * 4 + 1).sqrt().inverse()


def halohedra(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    x, y = _xy(K, N)
    root = (1 - (x + 2) * y * 2 + x * x * y * y).sqrt()
    return ((1 + (x + 2) * y) / (root * 2)) + Fraction(1, 2)


def twisted_cycles(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    x, y = _xy(K, N)
    one_m = 1 - x * y
    return (one_m - y * 2) / (one_m * one_m - y * 4)


def hypercubes(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    x, y = _xy(K, N)
    return (1 - (x + 2) * y).inverse()


def fixed_point(
    step: Callable[[tuple[BivariateSeries, ...]], tuple[BivariateSeries, ...]],
    count: int,
    K: int,
    N: int,
) -> tuple[BivariateSeries, ...]:
    """Iterate from the constant series 1 until stable; each pass fixes one more y-order."""
    state = tuple(BivariateSeries.one(K, N) for _ in range(count))
    for _ in range(N + 2):
        nxt = step(state)
        if nxt == state:
            return nxt
        state = nxt
    raise DomainError("fixed-point iteration did not stabilise within the truncation")


def missing_vertex_and_double(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> tuple[BivariateSeries, BivariateSeries]:
    """(f^M, f^D) solving f^M = 1 + xy f^D + y f^A f^M and f^D = 1 + xy f^D + 2y f^A f^M."""
    x, y = _xy(K, N)
    a = associahedra(K, N)
    xy, ya = x * y, y * a

    def step(s):
        m, d = s
        return (1 + xy * d + ya * m, 1 + xy * d + ya * m * 2)

    m, d = fixed_point(step, 2, K, N)
    return m, d


def cis_and_trans(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> tuple[BivariateSeries, BivariateSeries]:
    """(f^C, f^T) solving f^C = 1 + xy f^M + y f^A f^T and f^T = 1 + xy f^M + y f^A (f^C - 1)."""
    x, y = _xy(K, N)
    a = associahedra(K, N)
    m, _ = missing_vertex_and_double(K, N)
    base, ya = 1 + x * y * m, y * a

    def step(s):
        c, t = s
        return (base + ya * t, base + ya * (c - 1))

    c, t = fixed_point(step, 2, K, N)
    return c, t


def near_double_paths(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    x, y = _xy(K, N)
    m, d = missing_vertex_and_double(K, N)
    return 1 + x * y * d + y * associahedra(K, N) * m * 2


def path_weight(a: BivariateSeries, constant: int, slope: int) -> BivariateSeries:
    """Generating function of (constant + slope*i) a_i, i.e. constant*a + slope*y*D_y a."""
    return a.scale(constant) + a.y_d_y().scale(slope)


def twisted_paths(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1], slope: int = 1) -> BivariateSeries:
    """f^T (1 + y (2 f^A + slope * y D_y f^A)); slope 1 counts i+2 tubes of size i+1."""
    _, y = _xy(K, N)
    _, t = cis_and_trans(K, N)
    return t * (1 + y * path_weight(associahedra(K, N), 2, slope))


def double_cycles(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    x, y = _xy(K, N)
    a, b = associahedra(K, N), cyclohedra(K, N)
    c, _ = cis_and_trans(K, N)
    return 1 + x * y * b + y * (path_weight(a, 2, 2) * (c - 1) + b * 2)


def halohedron_complements(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    """Two rays times a single path graph: 1 + (1+x)y + (1+x)^2 y^2 f^A."""
    x, y = _xy(K, N)
    ray = 1 + x
    return 1 + ray * y + ray * ray * y * y * associahedra(K, N)


def halohedra_by_decomposition(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1], inner: str = "A") -> BivariateSeries:
    """1 + xy f^A + y[f^A + f^B + (F + y D_y F)(complement - 1)] with F = f^A or f^B."""
    x, y = _xy(K, N)
    a, b = associahedra(K, N), cyclohedra(K, N)
    if inner == "A":
        f, comp = a, halohedron_complements(K, N)
    elif inner == "B":
        f = b
        ray = 1 + x
        comp = 1 + ray * y + ray * ray * y * y * b
    else:
        raise InputError("inner is 'A' or 'B'")
    return 1 + x * y * a + y * (a + b + path_weight(f, 1, 1) * (comp - 1))


def twisted_cycle_pde_sides(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> tuple[BivariateSeries, BivariateSeries]:
    """Both sides of (y D_y - x D_x) f^TC = 2y [f^A f^TP + (y D_y f^A) f^TP + f^A (y D_y f^TP)]."""
    _, y = _xy(K, N)
    tc, tp, a = twisted_cycles(K, N), twisted_paths(K, N), associahedra(K, N)
    lhs = tc.y_d_y() - tc.x_d_x()
    rhs = y * (a * tp + a.y_d_y() * tp + a * tp.y_d_y()) * 2
    return lhs, rhs


def wand_mixed(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    """2 / (1 + sqrt(1 - 4y) - 2x), x exponential, y ordinary."""
    x, y = _xy(K, N)
    return BivariateSeries.constant(2, K, N) / (1 + (1 - y * 4).sqrt() - x * 2)


def pell_conjecture(K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    """A / (A - s) with A = 1 - 2st - s^2 t - s^2 t^2, in (s, t)."""
    s, t = _xy(K, N)
    a = 1 - s * t * 2 - s * s * t - s * s * t * t
    return a / (a - s)


def double_cycle_vertices(N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    """1 + (1 - sqrt(1-4y) - 2y)/(1-4y) + 2y/sqrt(1-4y), as a series in y only."""
    _, y = _xy(0, N)
    root = (1 - y * 4).sqrt()
    return 1 + (1 - root - y * 2) / (1 - y * 4) + y * 2 / root


def twisted_path_vertices(N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    """(1 - 2y + sqrt(1-4y)) / (2 (1-4y))."""
    _, y = _xy(0, N)
    return (1 - y * 2 + (1 - y * 4).sqrt()) / ((1 - y * 4) * 2)


def _missing(K, N):
    return missing_vertex_and_double(K, N)[0]


def _double(K, N):
    return missing_vertex_and_double(K, N)[1]


def _cis(K, N):
    return cis_and_trans(K, N)[0]


def _trans(K, N):
    return cis_and_trans(K, N)[1]


SERIES: dict[str, Callable[[int, int], BivariateSeries]] = {
    "A": associahedra,
    "B": cyclohedra,
    "H": halohedra,
    "TC": twisted_cycles,
    "TP": twisted_paths,
    "M": _missing,
    "D": _double,
    "C": _cis,
    "T": _trans,
    "NDP": near_double_paths,
    "DC": double_cycles,
    "cube": hypercubes,
    "halo-complement": halohedron_complements,
    "wand": wand_mixed,
    "pell-conjecture": pell_conjecture,
}

# hypercube family name -> series symbol (the row at y^n is the n-dimensional member)
FAMILY_SERIES: dict[str, str] = {
    "path-plus": "A",
    "double-path": "D",
    "cycle-plus": "H",
    "twisted-cycle": "TC",
    "twisted-path": "TP",
    "missing-vertex-double-path": "M",
    "cis-double-path": "C",
    "trans-double-path": "T",
    "near-double-path": "NDP",
    "double-cycle": "DC",
    "empty": "cube",
}

ALIASES = {"halohedron": "H", "associahedron": "A", "cyclohedron": "B", "hypercube": "cube"}


def family_series(name: str, K: int = DEFAULT_ORDER[0], N: int = DEFAULT_ORDER[1]) -> BivariateSeries:
    key = name.strip()
    key = FAMILY_SERIES.get(key, ALIASES.get(key.lower(), key))
    if key not in SERIES:
        raise UnknownFamilyError(f"no generating function for {name!r}")
    return SERIES[key](K, N)


def series_names() -> list[str]:
    return sorted(SERIES) + sorted(FAMILY_SERIES)

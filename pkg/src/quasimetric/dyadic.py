"""The dyadic counterexample space.

Points are dyadic rationals k/2^n in [0, 1].  Each point of level n >= 1 has
a left neighbour (k-1)/2^n and a right neighbour (k+1)/2^n, both of strictly
lower level.  An edge {z, l(z)} or {z, r(z)} has length a**level(z), the edge
{0, 1} has length 1, and rho(z, z') is the length of the V-shaped path that
climbs down the right path of the smaller point and the left path of the
larger one to where they meet.

All arithmetic is exact (``Fraction`` or scaled integers).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .errors import (
    DepthBudgetExceeded,
    EndpointHasNoNeighbors,
    MultipleIntersections,
    NoIntersection,
    NonpositiveIndex,
    PrecondViolation,
    SamePoint,
    ValidationError,
)
from .qcore import QuasiMetricSpace, from_scaled

MAX_DEPTH = 12


@total_ordering
@dataclass(frozen=True)
class DyadicPoint:
    """k / 2**n in lowest terms; the endpoints are (0, 0) and (1, 0)."""

    k: int
    n: int

    def __post_init__(self):
        if self.n == 0:
            ok = self.k in (0, 1)
        else:
            ok = self.n > 0 and 0 < self.k < 2**self.n and self.k % 2 == 1
        if not ok:
            raise ValidationError(f"not a reduced dyadic point in [0,1]: {self.k}/2^{self.n}")

    @classmethod
    def of(cls, x) -> "DyadicPoint":
        """From a Fraction, int, or "p/q" string."""
        x = Fraction(x)
        q = x.denominator
        if q & (q - 1) or not 0 <= x <= 1:
            raise ValidationError(f"{x} is not a dyadic rational in [0,1]")
        return cls(x.numerator, q.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, 2**self.n)

    @property
    def level(self) -> int:
        return self.n

    def __lt__(self, other: "DyadicPoint") -> bool:
        return self.k * 2**other.n < other.k * 2**self.n

    def __str__(self) -> str:
        return str(self.value)


ZERO = DyadicPoint(0, 0)
ONE = DyadicPoint(1, 0)


@dataclass(frozen=True)
class DyadicParams:
    """Edge-length base ``a`` in (0, 1/2] with its derived constants."""

    a: Fraction

    def __post_init__(self):
        a = Fraction(self.a)
        object.__setattr__(self, "a", a)
        if not 0 < a <= Fraction(1, 2):
            raise ValidationError(f"a must lie in (0, 1/2], got {a}")

    def tau(self, n: int) -> Fraction:
        return tau(n, self)

    @property
    def tau_infinity(self) -> Fraction:
        return self.a / (1 - self.a)

    @property
    def bound_constant(self) -> Fraction:
        """(1 - a) / a, the multiplicative triangle bound 1 + eps_a."""
        return (1 - self.a) / self.a


def _reduced(k: int, n: int) -> DyadicPoint:
    if k == 0:
        return ZERO
    shift = (k & -k).bit_length() - 1
    return DyadicPoint(k >> shift, n - shift)


def neighbors(z: DyadicPoint) -> Tuple[DyadicPoint, DyadicPoint]:
    if z.n == 0:
        raise EndpointHasNoNeighbors(f"{z} has level 0")
    return _reduced(z.k - 1, z.n), _reduced(z.k + 1, z.n)


@lru_cache(maxsize=1 << 16)
def path(z: DyadicPoint, direction: str) -> Tuple[DyadicPoint, ...]:
    """Iterate the left or right neighbour map from z down to an endpoint."""
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    side = 0 if direction == "left" else 1
    out = [z]
    while out[-1].n > 0:
        out.append(neighbors(out[-1])[side])
    return tuple(out)


def meet(z: DyadicPoint, w: DyadicPoint) -> DyadicPoint:
    """The unique common point of right_path(z) and left_path(w), z < w."""
    if not z < w or (z == ZERO and w == ONE):
        raise PrecondViolation(f"meet needs z < w and not the pair (0, 1); got {z}, {w}")
    common = set(path(z, "right")) & set(path(w, "left"))
    if not common:
        raise NoIntersection(f"paths of {z} and {w} do not meet")
    if len(common) > 1:
        raise MultipleIntersections(f"paths of {z} and {w} meet at {sorted(common)}")
    return common.pop()


def _climb(z: DyadicPoint, direction: str, stop: DyadicPoint, a: Fraction) -> Fraction:
    total = Fraction(0)
    for w in path(z, direction):
        if w == stop:
            return total
        total += a**w.n
    raise NoIntersection(f"{stop} is not on the {direction} path of {z}")


def rho(z: DyadicPoint, w: DyadicPoint, params: DyadicParams) -> Fraction:
    """Length of the V-shaped path between two distinct points."""
    if z == w:
        raise SamePoint(f"rho({z}, {z}) is not a distance between distinct points")
    if w < z:
        z, w = w, z
    if z == ZERO and w == ONE:
        return Fraction(1)
    m = meet(z, w)
    return _climb(z, "right", m, params.a) + _climb(w, "left", m, params.a)


def dist(z: DyadicPoint, w: DyadicPoint, params: DyadicParams) -> Fraction:
    """rho extended by dist(z, z) = 0."""
    return Fraction(0) if z == w else rho(z, w, params)


def tau(n: int, params: DyadicParams) -> Fraction:
    """a + a^2 + ... + a^(n-1) + 2 a^n."""
    if n < 1:
        raise NonpositiveIndex(f"tau is indexed from 1, got {n}")
    a = params.a
    return sum((a**i for i in range(1, n)), Fraction(0)) + 2 * a**n


def tau_infinity(params: DyadicParams) -> Fraction:
    return params.tau_infinity


def mirror(z: DyadicPoint) -> DyadicPoint:
    return DyadicPoint.of(1 - z.value)


def points(N: int) -> List[DyadicPoint]:
    """All points of level <= N in increasing order."""
    return [DyadicPoint.of(Fraction(i, 2**N)) for i in range(2**N + 1)]


def _grid_levels(N: int) -> np.ndarray:
    idx = np.arange(2**N + 1)
    lv = np.zeros(2**N + 1, dtype=np.int64)
    inner = idx[1:-1]
    tz = (inner & -inner).astype(np.int64)
    lv[1:-1] = N - np.log2(tz).round().astype(np.int64)
    return lv


def scaled_rho(N: int, params: DyadicParams) -> Tuple[np.ndarray, int]:
    """rho on all level <= N points as integers over the denominator q**N.

    Uses two shortcuts that the slow path in :func:`rho` does not:
    the meet of grid indices i < j is the index in [i, j] with the most
    trailing zeros, and right/left path lengths are prefix sums, so
    rho = R(i) - R(m) + L(j) - L(m).  Tests cross-check both routes.
    """
    p, q = params.a.numerator, params.a.denominator
    size = 2**N + 1
    weight = [p**lv * q ** (N - lv) for lv in range(N + 1)]
    lv = _grid_levels(N)
    L = [0] * size
    R = [0] * size
    # neighbours have lower level, so visit points by increasing level
    for i in sorted(range(1, size - 1), key=lambda t: lv[t]):
        step = 2 ** (N - lv[i])
        L[i] = weight[lv[i]] + L[i - step]
        R[i] = weight[lv[i]] + R[i + step]
    big = max(max(L), max(R), q**N) * 4 >= 2**62
    dtype = object if big else np.int64
    L = np.array(L, dtype=dtype)
    R = np.array(R, dtype=dtype)

    i = np.arange(size)[:, None]
    j = np.arange(size)[None, :]
    lo, hi = np.minimum(i, j), np.maximum(i, j)
    x = np.maximum(lo ^ hi, 1)
    t = np.floor(np.log2(x)).astype(np.int64)
    # lo wins when it is a multiple of 2**(t+1); otherwise hi with bits below t cleared
    m = np.where((lo & ((2 << t) - 1)) == 0, lo, (hi >> t) << t)
    m = np.where(hi == size - 1, size - 1, m)
    out = R[lo] - R[m] + L[hi] - L[m]
    out[0, size - 1] = out[size - 1, 0] = q**N
    np.fill_diagonal(out, 0)
    return out, q**N


def truncate(N: int, params: DyadicParams, *, max_depth: int = MAX_DEPTH) -> QuasiMetricSpace:
    """The finite subspace of points with level <= N, sorted by value."""
    if N < 0:
        raise PrecondViolation("depth must be nonnegative")
    if N > max_depth:
        raise DepthBudgetExceeded(f"depth {N} > {max_depth}; pass max_depth to override")
    num, den = scaled_rho(N, params)
    labels = [str(Fraction(i, 2**N)) for i in range(2**N + 1)]
    return from_scaled(num, den, labels)


def reduce_triangle(
    z1: DyadicPoint, z0: DyadicPoint, z2: DyadicPoint, params: Optional[DyadicParams] = None
) -> Tuple[DyadicPoint, DyadicPoint]:
    """Reduce z1 < z0 < z2 (with z0 at or left of the meet) to a special triangle.

    z1' is where left_path(z0) crosses right_path(z1); z2' is the first point
    of right_path(z0) that also lies on right_path(z1).
    """
    if not (z1 < z0 < z2):
        raise PrecondViolation(f"need z1 < z0 < z2, got {z1}, {z0}, {z2}")
    top = ONE if (z1 == ZERO and z2 == ONE) else meet(z1, z2)
    if top < z0:
        raise PrecondViolation(f"{z0} lies right of meet({z1}, {z2}) = {top}; mirror first")
    right1 = path(z1, "right")
    common = set(path(z0, "left")) & set(right1)
    if len(common) != 1:
        raise (NoIntersection if not common else MultipleIntersections)(f"left path of {z0} vs right path of {z1}")
    z1p = common.pop()
    on_right1 = set(right1)
    z2p = next((w for w in path(z0, "right") if w in on_right1), None)
    if z2p is None:
        raise NoIntersection(f"right paths of {z0} and {z1} never merge")
    return z1p, z2p


def is_special_triangle(z1: DyadicPoint, z0: DyadicPoint, z2: DyadicPoint) -> bool:
    return (
        z1 in path(z0, "left")
        and z2 in path(z0, "right")
        and z2 in path(z1, "right")
    )


def special_triangles(N: int) -> Iterator[Tuple[DyadicPoint, DyadicPoint, DyadicPoint]]:
    """Nondegenerate special triangles (z1, z0, z2) among points of level <= N.

    Yields in increasing (z1, z0, z2) order.
    """
    found = []
    for z0 in points(N):
        if z0.n < 2:
            continue
        right0 = set(path(z0, "right"))
        for z1 in path(z0, "left")[1:]:
            if z1.n == 0:
                continue
            for z2 in path(z1, "right")[1:]:
                if z2 in right0:
                    found.append((z1, z0, z2))
    found.sort(key=lambda t: (t[0].value, t[1].value, t[2].value))
    return iter(found)


def special_triangle_defect(z1, z0, z2, params: DyadicParams) -> Fraction:
    """rho(z1,z0) + rho(z0,z2) - rho(z1,z2); equals tau_n - tau_m."""
    return dist(z1, z0, params) + dist(z0, z2, params) - dist(z1, z2, params)


@dataclass
class FactReport:
    depth: int
    points_checked: int = 0
    edges_checked: int = 0
    fact1: bool = True
    fact2: bool = True
    fact3: bool = True
    counterexamples: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.fact1 and self.fact2 and self.fact3


def _first_below(seq, level):
    return next(w for w in seq if w.n < level)


def verify_facts(N: int) -> FactReport:
    """Check the level-structure facts for every point of level 1..N.

    fact1: interior levels of both paths are exactly 1..level(z)-1, once each.
    fact2: r(l^k(z)) is the first right-path point of lower level (and the
    mirrored statement for right-path points).
    fact3: no dyadic of level <= N strictly inside a graph edge has level
    at or below the edge's endpoints.
    """
    if N < 1:
        raise PrecondViolation("verify_facts needs N >= 1")
    report = FactReport(depth=N)
    lv = _grid_levels(N)
    for z in points(N):
        if z.n == 0:
            continue
        report.points_checked += 1
        left, right = path(z, "left"), path(z, "right")
        levels = sorted(w.n for w in left[1:-1] + right[1:-1])
        if levels != list(range(1, z.n)):
            report.fact1 = False
            report.counterexamples.append(f"fact1 at {z}: levels {levels}")
        for seq, other, side in ((left, right, 1), (right, left, 0)):
            for w in seq:
                if w.n < 1:
                    continue
                if neighbors(w)[side] != _first_below(other, w.n):
                    report.fact2 = False
                    report.counterexamples.append(f"fact2 at {z} via {w}")
        # edges {z, l(z)} and {z, r(z)} on the depth-N grid
        step = 2 ** (N - z.n)
        i = z.k * step
        for lo, hi in ((i - step, i), (i, i + step)):
            report.edges_checked += 1
            top = max(lv[lo], lv[hi])
            inside = lv[lo + 1 : hi]
            if inside.size and inside.min() <= top:
                report.fact3 = False
                report.counterexamples.append(f"fact3 on edge ({lo}/2^{N}, {hi}/2^{N})")
    report.edges_checked += 1  # the edge {0, 1}: every interior point has level >= 1
    if N >= 1 and lv[1:-1].min() < 1:
        report.fact3 = False
        report.counterexamples.append("fact3 on edge (0, 1)")
    return report


def tent(z: DyadicPoint) -> List[Tuple[DyadicPoint, int]]:
    """The tent over z as a left-to-right polyline of (point, level)."""
    left = list(reversed(path(z, "left")))
    right = list(path(z, "right"))[1:]
    return [(w, w.n) for w in left + right]


def tent_csv(z: DyadicPoint) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["value", "level"])
    for w, level in tent(z):
        writer.writerow([str(w), level])
    return buf.getvalue()

"""Experiment drivers and seeded random spaces.

Random spaces come from numpy's ``Generator`` over the PCG64 bit generator,
seeded with the integer in :class:`GeneratorSpec`, so a spec reproduces the
same space on every platform numpy supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from . import dyadic
from .errors import BadSpec, DepthBudgetExceeded, PrecondViolation
from .metrize import chain_metrize
from .qcore import QuasiMetricSpace, mult_triangle_constant, snowflake, validate_space

KINDS = ("euclidean-metric", "ultrametric", "snowflaked-metric", "perturbed")
RATIO_MAX_DEPTH = 8


@dataclass(frozen=True)
class CollapseRow:
    depth: int
    d01: Fraction
    upper_bound: Fraction
    uniform_chain_cost: Fraction


def uniform_chain_cost(n: int, params: dyadic.DyadicParams) -> Fraction:
    """Edge sum of the chain 0, 1/2^n, 2/2^n, ..., 1 computed point by point."""
    grid = dyadic.points(n)
    return sum((dyadic.rho(u, v, params) for u, v in zip(grid, grid[1:])), Fraction(0))


def collapse_experiment(
    params: dyadic.DyadicParams, N_max: int, *, max_depth: int = dyadic.MAX_DEPTH
) -> List[CollapseRow]:
    """Chain distance d_N(0, 1) on each truncation N = 1..N_max.

    Raises ``AssertionError`` if a row breaks d_N(0,1) <= (2a)^N or the
    sequence increases.
    """
    if N_max < 1:
        raise PrecondViolation("N_max must be at least 1")
    if N_max > max_depth:
        raise DepthBudgetExceeded(f"N_max {N_max} > {max_depth}")
    rows = []
    for N in range(1, N_max + 1):
        space = dyadic.truncate(N, params, max_depth=max_depth)
        d01 = chain_metrize(space).d[0, space.n - 1]
        bound = (2 * params.a) ** N
        rows.append(CollapseRow(N, d01, bound, uniform_chain_cost(N, params)))
        assert d01 <= bound, f"d_{N}(0,1) = {d01} exceeds (2a)^{N}"
        assert len(rows) < 2 or d01 <= rows[-2].d01, f"d_N(0,1) increased at N={N}"
    return rows


def ratio_experiment(
    params: dyadic.DyadicParams, N: int, *, max_depth: int = RATIO_MAX_DEPTH
) -> Tuple[Fraction, Tuple[dyadic.DyadicPoint, dyadic.DyadicPoint, dyadic.DyadicPoint]]:
    """Largest rho(x,z) / (rho(x,y) + rho(y,z)) over ordered triples of truncate(N).

    The argmax is returned as points (x, y, z).  Asserts the bound (1-a)/a.
    """
    if N > max_depth:
        raise DepthBudgetExceeded(f"depth {N} > {max_depth} for a triple scan")
    space = dyadic.truncate(N, params)
    C, triple = mult_triangle_constant(space)
    assert C <= params.bound_constant, f"ratio {C} exceeds (1-a)/a at depth {N}"
    grid = dyadic.points(N)
    return C, tuple(grid[i] for i in triple)


def superadditivity_violations(space: QuasiMetricSpace) -> List[Tuple[int, int, int]]:
    """Index triples i < j < k (sorted points) with rho(i,k) < rho(i,j) + rho(j,k)."""
    V = space.values
    n = space.n
    bad = []
    for j in range(1, n - 1):
        lhs = V[:j, j + 1 :]
        rhs = V[:j, j][:, None] + V[j, j + 1 :][None, :]
        for i, k in np.argwhere(np.asarray(lhs < rhs, dtype=bool)):
            bad.append((int(i), j, int(j + 1 + k)))
    return sorted(bad)


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a random space.

    ``p`` is the exponent for ``snowflaked-metric``; ``delta`` bounds the
    multiplicative noise of ``perturbed``.
    """

    kind: str
    n: int
    seed: int
    p: Optional[float] = None
    delta: float = 0.5


def _euclidean(rng: np.random.Generator, n: int) -> np.ndarray:
    pts = rng.random((n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def _ultrametric(rng: np.random.Generator, n: int) -> list:
    # random binary merge tree; merge heights are nondecreasing integers
    clusters = [[i] for i in range(n)]
    height = 0
    D = [[Fraction(0)] * n for _ in range(n)]
    while len(clusters) > 1:
        height += int(rng.integers(0, 3)) if height else int(rng.integers(1, 4))
        a, b = sorted(rng.choice(len(clusters), size=2, replace=False).tolist())
        for x in clusters[a]:
            for y in clusters[b]:
                D[x][y] = D[y][x] = Fraction(height)
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
    return D


def generate_space(spec: GeneratorSpec) -> QuasiMetricSpace:
    if spec.kind not in KINDS:
        raise BadSpec(f"unknown kind {spec.kind!r}; expected one of {KINDS}")
    if spec.n < 2:
        raise BadSpec("n must be at least 2")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.kind == "ultrametric":
        return validate_space(_ultrametric(rng, spec.n))
    base = _euclidean(rng, spec.n)
    if spec.kind == "euclidean-metric":
        return validate_space(base)
    if spec.kind == "snowflaked-metric":
        if spec.p is None or spec.p <= 0:
            raise BadSpec("snowflaked-metric needs p > 0")
        return snowflake(validate_space(base), float(spec.p))
    if spec.delta < 0:
        raise BadSpec("delta must be nonnegative")
    noise = 1 + spec.delta * rng.random((spec.n, spec.n))
    noise = np.triu(noise, 1)
    return validate_space(base * (noise + noise.T))


def random_rational_space(n: int, seed: int, max_value: int = 20) -> QuasiMetricSpace:
    """Exact space with random positive integer/rational entries (no axiom (3) bound)."""
    if n < 1:
        raise BadSpec("n must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = M[j][i] = Fraction(int(rng.integers(1, max_value + 1)), int(rng.integers(1, 4)))
    return validate_space(M)


def random_chain(rng: np.random.Generator, n: int, length: int) -> Tuple[int, ...]:
    return tuple(int(x) for x in rng.integers(0, n, size=length))

"""Finite quasi-metric spaces: validation, constants, snowflake transform.

Exact spaces are stored as an integer numerator matrix over one common
denominator.  That keeps comparisons and shortest-path sums in integer
arithmetic (vectorised with ``int64`` when the magnitudes allow it, Python
integers in an object array otherwise) while every value handed back to the
caller is a reduced :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import (
    AsymmetricEntry,
    NegativeEntry,
    NonIntegerExponentInExactMode,
    NonSquare,
    NonzeroDiagonal,
    PrecondViolation,
    ValidationError,
    ZeroOffDiagonal,
)
from .scalar import DEFAULT_TOL, Scalar, is_exact

Triple = Tuple[int, int, int]

# int64 is used while every sum of up to n entries stays below this
_INT64_SAFE = 2**62


def _compact(values: np.ndarray, n_terms: int = 1) -> np.ndarray:
    """Return an int64 copy if ``n_terms`` summed entries cannot overflow."""
    if values.size == 0:
        return values.astype(np.int64)
    peak = int(np.max(np.abs(values)))
    if peak * max(n_terms, 1) < _INT64_SAFE:
        return values.astype(np.int64)
    return values.astype(object)


@dataclass(frozen=True, eq=False)
class QuasiMetricSpace:
    """A validated finite space; build one with :func:`validate_space`.

    ``values`` holds numerators over ``denominator`` in exact mode and plain
    floats in float mode (``denominator is None``).
    """

    labels: Tuple[str, ...]
    values: np.ndarray
    denominator: Optional[int] = None
    tol: float = DEFAULT_TOL

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def exact(self) -> bool:
        return self.denominator is not None

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        v = self.values[i, j]
        if self.exact:
            return Fraction(int(v), self.denominator)
        return float(v)

    def matrix(self) -> list:
        """Entries as nested lists of Fraction or float."""
        n = self.n
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def to_float(self) -> np.ndarray:
        if self.exact:
            return self.values.astype(np.float64) / self.denominator
        return self.values.astype(np.float64)

    def same_values(self, other: "QuasiMetricSpace") -> bool:
        """Exact entrywise equality (tolerance-based in float mode)."""
        if self.n != other.n:
            return False
        if self.exact and other.exact:
            lhs = self.values.astype(object) * other.denominator
            rhs = other.values.astype(object) * self.denominator
            return bool(np.all(lhs == rhs))
        return bool(np.allclose(self.to_float(), other.to_float(), rtol=0, atol=self.tol))

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"QuasiMetricSpace(n={self.n}, mode={mode})"


def _first_violation(values: np.ndarray, exact: bool, tol: float):
    n = values.shape[0]
    eye = np.eye(n, dtype=bool)
    if exact:
        diag_bad = eye & np.asarray(values != 0, dtype=bool)
        asym = np.asarray(values != values.T, dtype=bool)
    else:
        diag_bad = eye & (np.abs(values) > tol)
        asym = np.abs(values - values.T) > tol
    neg = np.asarray(values < 0, dtype=bool)
    zero = ~eye & np.asarray(values == 0, dtype=bool)
    asym &= np.triu(np.ones((n, n), dtype=bool), 1)
    bad = diag_bad | neg | zero | asym
    if not bad.any():
        return None
    i, j = (int(t) for t in np.argwhere(bad)[0])
    if diag_bad[i, j]:
        return NonzeroDiagonal(i)
    if neg[i, j]:
        return NegativeEntry(i, j)
    if zero[i, j]:
        return ZeroOffDiagonal(i, j)
    return AsymmetricEntry(i, j)


def _default_labels(n: int, labels) -> Tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise ValidationError(f"{len(labels)} labels for {n} points")
    return labels


def validate_space(
    matrix,
    labels: Optional[Sequence] = None,
    *,
    exact: Optional[bool] = None,
    tol: float = DEFAULT_TOL,
) -> QuasiMetricSpace:
    """Check axioms (1) and (2) and return a :class:`QuasiMetricSpace`.

    ``matrix`` may be nested lists of int/Fraction/float or a numpy array.
    The mode is inferred unless ``exact`` is given: any float entry selects
    float mode.  Errors name the first offending cell in row-major order.
    """
    if isinstance(matrix, np.ndarray):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise NonSquare(matrix.shape)
        rows = matrix
        if exact is None:
            if matrix.dtype.kind in "iu":
                exact = True
            elif matrix.dtype.kind == "f":
                exact = False
            else:
                exact = all(is_exact(x) for x in matrix.flat)
    else:
        rows = [list(r) for r in matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise NonSquare((n, tuple(len(r) for r in rows)))
        if exact is None:
            exact = all(is_exact(x) for r in rows for x in r)
    n = len(rows)
    if n < 1:
        raise ValidationError("a space needs at least one point")

    if exact:
        fr = [[Fraction(x) for x in r] for r in rows]
        den = math.lcm(*(x.denominator for r in fr for x in r))
        num = np.array([[x.numerator * (den // x.denominator) for x in r] for r in fr], dtype=object)
        return from_scaled(num, den, labels)

    values = np.array(rows, dtype=np.float64)
    err = _first_violation(values, False, tol)
    if err is not None:
        raise err
    upper = np.triu(values, 1)
    values = upper + upper.T
    values.flags.writeable = False
    return QuasiMetricSpace(_default_labels(n, labels), values, None, tol)


def from_scaled(numerators: np.ndarray, denominator: int, labels=None) -> QuasiMetricSpace:
    """Exact space from an integer matrix over a common positive denominator."""
    if numerators.ndim != 2 or numerators.shape[0] != numerators.shape[1]:
        raise NonSquare(numerators.shape)
    if denominator <= 0:
        raise ValidationError("denominator must be positive")
    n = numerators.shape[0]
    values = _compact(np.asarray(numerators), n)
    err = _first_violation(values, True, 0.0)
    if err is not None:
        raise err
    values.flags.writeable = False
    return QuasiMetricSpace(_default_labels(n, labels), values, int(denominator))


# -- triple scans -------------------------------------------------------------


def _slice_best(num: np.ndarray, den: np.ndarray, mask: np.ndarray, exact: bool, tol: float):
    """Maximum of num/den over ``mask`` and its first (row-major) argmax.

    Exact mode screens with floats, then settles the candidates within a
    relative 1e-9 of the float maximum with Fraction arithmetic.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        fr = np.where(mask, num.astype(np.float64) / den.astype(np.float64), -np.inf)
    fmax = fr.max()
    if not exact:
        r, c = np.argwhere(fr >= fmax - tol)[0]
        return float(fmax), (int(r), int(c))
    cand = np.argwhere(fr >= fmax - abs(fmax) * 1e-9)
    best, arg = None, None
    for r, c in cand:
        v = Fraction(int(num[r, c]), int(den[r, c]))
        if best is None or v > best:
            best, arg = v, (int(r), int(c))
    return best, arg


def _triple_max(Q: QuasiMetricSpace, combine) -> Tuple[Scalar, Optional[Triple]]:
    n = Q.n
    V = Q.values
    offdiag = ~np.eye(n, dtype=bool)
    best, arg = None, None
    for y in range(n):
        mask = offdiag.copy()
        mask[y, :] = False
        mask[:, y] = False
        col = V[:, y][:, None]
        row = V[y, :][None, :]
        value, (x, z) = _slice_best(V, combine(col, row), mask, Q.exact, Q.tol)
        triple = (x, y, z)
        if best is None:
            best, arg = value, triple
        elif Q.exact:
            if value > best or (value == best and triple < arg):
                best, arg = value, triple
        elif value > best + Q.tol:
            best, arg = value, triple
        elif abs(value - best) <= Q.tol:
            if triple < arg:
                arg = triple
            best = max(best, value)
    return best, arg


def quasi_constant(Q: QuasiMetricSpace) -> Tuple[Scalar, Optional[Triple]]:
    """Least K with rho(x,z) <= K max(rho(x,y), rho(y,z)) for all triples.

    Returns ``(K, (x, y, z))`` where the triple is the lexicographically
    smallest maximiser; spaces with fewer than three points give ``(1, None)``.
    """
    if Q.n < 3:
        return (Fraction(1) if Q.exact else 1.0), None
    return _triple_max(Q, np.maximum)


def mult_triangle_constant(Q: QuasiMetricSpace) -> Tuple[Scalar, Optional[Triple]]:
    """Least C with rho(x,z) <= C (rho(x,y) + rho(y,z)); C <= 1 iff metric."""
    if Q.n < 3:
        return (Fraction(1, 2) if Q.exact else 0.5), None
    return _triple_max(Q, lambda a, b: a + b)


@dataclass(frozen=True)
class SpaceAnalysis:
    K: Scalar
    C: Scalar
    is_metric: bool
    is_ultrametric: bool
    worst_triple_K: Optional[Triple]
    worst_triple_C: Optional[Triple]


def classify(Q: QuasiMetricSpace) -> SpaceAnalysis:
    K, tk = quasi_constant(Q)
    C, tc = mult_triangle_constant(Q)
    if Q.exact:
        is_metric, is_ultra = C <= 1, K <= 1
    else:
        is_metric, is_ultra = C <= 1 + Q.tol, K <= 1 + Q.tol
    return SpaceAnalysis(K, C, bool(is_metric), bool(is_ultra), tk, tc)


def snowflake(Q: QuasiMetricSpace, p) -> QuasiMetricSpace:
    """Entrywise power rho**p.

    A metric becomes a 2**p-quasi-metric.  Exact spaces only accept positive
    integer exponents, since rational powers of rationals leave the field.
    """
    if p <= 0:
        raise PrecondViolation(f"exponent must be positive, got {p}")
    if Q.exact:
        if isinstance(p, float) and p.is_integer():
            p = int(p)
        if not is_exact(p) or Fraction(p).denominator != 1:
            raise NonIntegerExponentInExactMode(p)
        p = int(p)
        num = Q.values.astype(object) ** p
        return from_scaled(num, Q.denominator**p, Q.labels)
    values = Q.values ** float(p)
    values.flags.writeable = False
    return QuasiMetricSpace(Q.labels, values, None, Q.tol)

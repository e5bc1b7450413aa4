"""Chain metrization of finite quasi-metric spaces.

The chain distance d(z, z') is the infimum of rho-edge sums over finite
chains z = z_0, ..., z_{k+1} = z'.  On a finite space with nonnegative
weights the infimum is attained by a simple path, so it is the all-pairs
shortest-path closure of the complete graph weighted by rho.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ChainTooShort, EnumerationBudgetExceeded, PrecondViolation
from .qcore import QuasiMetricSpace, _compact, _slice_best, from_scaled, quasi_constant
from .scalar import Scalar

Chain = Tuple[int, ...]


def _closure(W: np.ndarray):
    """Floyd-Warshall over a dense weight matrix, with predecessors.

    ``pred[i, j]`` is the vertex before ``j`` on the chosen i -> j path.  Only
    strict improvements replace an entry, so among equal-cost paths the one
    first reached in increasing pivot order is kept.
    """
    n = W.shape[0]
    D = W.copy()
    pred = np.repeat(np.arange(n)[:, None], n, axis=1)
    for k in range(n):
        cand = D[:, k, None] + D[None, k, :]
        better = np.asarray(cand < D, dtype=bool)
        if better.any():
            D = np.where(better, cand, D)
            pred = np.where(better, pred[k][None, :], pred)
    return D, pred


@dataclass(frozen=True, eq=False)
class ChainMetricResult:
    d: QuasiMetricSpace
    predecessor: np.ndarray
    zero_pairs: Tuple[Tuple[int, int], ...] = ()

    def witness(self, i: int, j: int) -> Chain:
        """A chain from i to j whose edge sum equals d[i, j]."""
        if i == j:
            return (i, i)
        path = [j]
        while path[-1] != i:
            path.append(int(self.predecessor[i, path[-1]]))
        return tuple(reversed(path))


def chain_cost(Q: QuasiMetricSpace, chain: Sequence[int]) -> Scalar:
    """Sum of rho over consecutive pairs of ``chain``."""
    total = Fraction(0) if Q.exact else 0.0
    for u, v in zip(chain, chain[1:]):
        total += Q[u, v]
    return total


def chain_metrize(Q: QuasiMetricSpace) -> ChainMetricResult:
    """Shortest-path closure d of rho, with witness chains."""
    W = _compact(Q.values, Q.n) if Q.exact else Q.values
    D, pred = _closure(W)
    if Q.exact:
        d = from_scaled(D, Q.denominator, Q.labels)
    else:
        D.flags.writeable = False
        d = QuasiMetricSpace(Q.labels, D, None, Q.tol)
    # d is bounded below by the least positive entry of rho, so this stays
    # empty on finite spaces; it is where an infinite-space collapse would show
    zero = np.argwhere(np.triu(np.asarray(D == 0, dtype=bool), 1))
    return ChainMetricResult(d, pred, tuple((int(i), int(j)) for i, j in zero))


def chain_oracle(Q: QuasiMetricSpace, max_interior: int, *, budget: Optional[int] = None) -> list:
    """Chain distance by explicit enumeration; an independent check.

    Tries every chain whose interior points are distinct and number at most
    ``max_interior``.  Refuses spaces with n > 10 and ``max_interior`` > 8
    unless ``budget`` (a cap on enumerated chains per pair) says otherwise.
    """
    n = Q.n
    if max_interior < 0:
        raise PrecondViolation("max_interior must be nonnegative")
    if budget is None:
        if n > 10 and max_interior > 8:
            raise EnumerationBudgetExceeded(f"n={n} with max_interior={max_interior}")
    else:
        m = min(max_interior, max(n - 2, 0))
        count = sum(_perm(n - 2, k) for k in range(m + 1))
        if count > budget:
            raise EnumerationBudgetExceeded(f"{count} chains per pair exceeds budget {budget}")
    rho = Q.matrix()
    zero = Fraction(0) if Q.exact else 0.0
    d = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            others = [k for k in range(n) if k != i and k != j]
            best = rho[i][j]
            for size in range(1, min(max_interior, len(others)) + 1):
                for mid in itertools.permutations(others, size):
                    chain = (i, *mid, j)
                    cost = sum((rho[u][v] for u, v in zip(chain, chain[1:])), zero)
                    if cost < best:
                        best = cost
            d[i][j] = d[j][i] = best
    return d


def _perm(m: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= m - t
    return out


@dataclass(frozen=True)
class FrinkReport:
    K: Scalar
    applicable: bool
    lower_ok: bool
    upper_ok: bool
    min_ratio: Scalar
    argmin_pair: Optional[Tuple[int, int]]


def frink_check(Q: QuasiMetricSpace, result: Optional[ChainMetricResult] = None) -> FrinkReport:
    """Test rho/(2K) <= d <= rho entrywise for the chain metric d.

    Guaranteed when K <= 2; for larger K the flags are informational.
    """
    K, _ = quasi_constant(Q)
    if result is None:
        result = chain_metrize(Q)
    d = result.d
    n = Q.n
    if n < 2:
        one = Fraction(1) if Q.exact else 1.0
        return FrinkReport(K, K <= 2, True, True, one, None)
    offdiag = ~np.eye(n, dtype=bool)
    if Q.exact:
        # d and rho share the denominator, so compare numerators directly
        R = Q.values.astype(object)
        Dv = d.values.astype(object)
        upper_ok = bool(np.all(Dv <= R))
        lower_ok = bool(np.all(2 * K.numerator * Dv >= K.denominator * R))
        inv, pair = _slice_best(R, Dv, offdiag, True, 0.0)
        min_ratio = 1 / inv
    else:
        R, Dv, tol = Q.values, d.values, Q.tol
        upper_ok = bool(np.all(Dv <= R + tol))
        lower_ok = bool(np.all(R / (2 * K) <= Dv + tol))
        with np.errstate(divide="ignore"):
            ratio = np.where(offdiag, Dv / np.where(offdiag, R, 1.0), np.inf)
        mn = ratio.min()
        pair = tuple(int(t) for t in np.argwhere(ratio <= mn + tol)[0])
        min_ratio = float(mn)
    return FrinkReport(K, bool(K <= 2), lower_ok, upper_ok, min_ratio, pair)


def sigma_bound(
    Q: QuasiMetricSpace, sigma: Sequence[int], K: Optional[Scalar] = None
) -> Tuple[Scalar, bool]:
    """Weighted chain bound from the proof of Frink's theorem.

    Sigma(sigma) = K (rho(z0,z1) + 2 * sum of inner edges + rho(zk,zk+1)).
    Returns the bound and whether rho(first, last) <= bound; for K <= 2 the
    latter holds for every chain with at least one interior point.
    """
    sigma = tuple(sigma)
    if len(sigma) < 3:
        raise ChainTooShort(f"chain of length {len(sigma)}; need at least 3")
    if K is None:
        K, _ = quasi_constant(Q)
    edges = [Q[u, v] for u, v in zip(sigma, sigma[1:])]
    total = edges[0] + 2 * sum(edges[1:-1], Fraction(0) if Q.exact else 0.0) + edges[-1]
    bound = K * total
    lhs = Q[sigma[0], sigma[-1]]
    holds = lhs <= bound if Q.exact else lhs <= bound + Q.tol
    return bound, bool(holds)

"""Exact p-Wasserstein distances between equal-size uniform point clouds.

For two uniform empirical measures with the same cardinality N the optimal
transport plan can always be taken to be a permutation matrix scaled by 1/N
(permutations are the extreme points of the doubly stochastic polytope), so
the distance reduces to an exact linear assignment over the pairwise cost
matrix.  A factorial brute-force solver is kept alongside as an independent
validation oracle for small N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .groups import PointCloud

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "TransportConfig",
    "TransportResult",
    "cost_matrix",
    "wasserstein",
    "brute_force_wasserstein",
]

# Cap on the factorial oracle: 8! = 40320 permutations.
BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class TransportConfig:
    """Order of the Wasserstein distance and tolerance for cost comparisons."""

    p: float = 2.0
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.p < 1.0:
            raise ValueError(f"Wasserstein order p must be >= 1, got {self.p}")
        if self.tolerance <= 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


@dataclass(frozen=True, eq=False)
class TransportResult:
    """An optimal pairing between two clouds and its cost.

    ``assignment[i]`` is the target index matched to source point i;
    ``total_cost`` is the mean p-th-power pairing cost (the transport
    objective) and ``distance = total_cost ** (1/p)``.

    Only ``total_cost`` is contractually unique: when several pairings tie,
    the reported permutation depends on the solver's deterministic scan order.
    """

    assignment: np.ndarray
    total_cost: float
    distance: float


def cost_matrix(X: PointCloud, Y: PointCloud, p: float = 2.0) -> np.ndarray:
    """N x N matrix of pairwise costs ||x_i - y_j||^p."""
    if len(X) != len(Y):
        raise ValueError(f"cloud sizes differ: {len(X)} vs {len(Y)}")
    diff = X.points[:, None, :] - Y.points[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    if p == 2.0:
        return sq
    return np.sqrt(sq) ** p


def wasserstein(X: PointCloud, Y: PointCloud, cfg: TransportConfig | None = None) -> TransportResult:
    """Exact p-Wasserstein distance between equal-size uniform clouds.

    Solves the assignment problem on the pairwise cost matrix; the returned
    ``total_cost`` is the minimal mean pairing cost and ``distance`` its
    1/p-th power.
    """
    cfg = cfg or TransportConfig()
    costs = cost_matrix(X, Y, cfg.p)
    if not np.all(np.isfinite(costs)):
        raise OverflowError("transport cost matrix contains non-finite entries")
    rows, cols = linear_sum_assignment(costs)
    total = float(costs[rows, cols].sum() / len(X))
    return TransportResult(assignment=cols.copy(), total_cost=total, distance=total ** (1.0 / cfg.p))


def brute_force_wasserstein(
    X: PointCloud, Y: PointCloud, cfg: TransportConfig | None = None
) -> TransportResult:
    """Exhaustive minimum over all N! pairings; oracle for ``wasserstein``.

    Shares the cost matrix and objective with the assignment path so the two
    routes agree bit for bit on the optimum.  Guarded to N <= 8.
    """
    cfg = cfg or TransportConfig()
    n = len(X)
    if n != len(Y):
        raise ValueError(f"cloud sizes differ: {n} vs {len(Y)}")
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute-force solver capped at N = {BRUTE_FORCE_LIMIT}, got N = {n}")
    costs = cost_matrix(X, Y, cfg.p)
    idx = np.arange(n)
    best_total = np.inf
    best_perm: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(n)):
        total = costs[idx, perm].sum()
        if total < best_total:
            best_total = total
            best_perm = perm
    assert best_perm is not None
    total = float(best_total / n)
    return TransportResult(
        assignment=np.asarray(best_perm, dtype=np.intp),
        total_cost=total,
        distance=total ** (1.0 / cfg.p),
    )

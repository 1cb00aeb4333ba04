"""Deterministic threshold baseline for symmetry classification.

A candidate group is accepted at threshold upsilon when every element-wise
distance between the cloud and its transformed copies falls below upsilon.
Sweeping upsilon exposes how fragile the rule is: the intervals where it
uniquely classifies the true group ("robust windows") can be narrow or
absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import DihedralGroup, GroupElement, PointCloud, apply_element
from .transport import TransportConfig, wasserstein

__all__ = [
    "NO_CLASSIFICATION",
    "AMBIGUOUS",
    "ThresholdOutcome",
    "Classification",
    "SweepReport",
    "elementwise_distances",
    "threshold_classify",
    "threshold_sweep",
    "default_grid",
]

NO_CLASSIFICATION = "none"
AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class ThresholdOutcome:
    """Accept/reject verdict for one candidate at one threshold."""

    candidate_n: int
    max_elementwise: float
    accepted: bool


@dataclass(frozen=True)
class Classification:
    """Outcome of the threshold rule across all candidates at one upsilon.

    ``outcome`` is an integer n when the accepted set is subgroup-consistent
    (every accepted candidate divides the largest one), "none" when nothing
    is accepted, and "ambiguous" otherwise.
    """

    upsilon: float
    outcomes: tuple[ThresholdOutcome, ...]
    accepted: frozenset[int]
    outcome: int | str


@dataclass(frozen=True)
class SweepReport:
    """Classification as a function of the threshold.

    ``grid``/``classifications`` give the per-grid-point outcomes for
    plotting; ``robust_windows`` lists maximal open intervals (lo, hi, n) of
    constant integer classification, computed from the exact crossing points
    (the sorted distinct per-candidate maximum distances) rather than from
    the grid.
    """

    candidates: tuple[int, ...]
    max_by_candidate: dict[int, float]
    grid: np.ndarray
    accepted_sets: tuple[frozenset[int], ...]
    classifications: tuple[int | str, ...]
    robust_windows: tuple[tuple[float, float, int], ...]

    def windows_for(self, n: int) -> list[tuple[float, float]]:
        return [(lo, hi) for lo, hi, win_n in self.robust_windows if win_n == n]


def elementwise_distances(
    G: DihedralGroup, X: PointCloud, cfg: TransportConfig | None = None
) -> list[tuple[GroupElement, float]]:
    """Un-squared W2 distance between X and g(X) for every element of D_n."""
    cfg = cfg or TransportConfig()
    return [(g, wasserstein(X, apply_element(g, X), cfg).distance) for g in G.elements()]


def _classify(max_by_candidate: dict[int, float], upsilon: float) -> tuple[frozenset[int], int | str]:
    accepted = frozenset(n for n, dist in max_by_candidate.items() if dist < upsilon)
    if not accepted:
        return accepted, NO_CLASSIFICATION
    top = max(accepted)
    if all(top % n == 0 for n in accepted):
        return accepted, top
    return accepted, AMBIGUOUS


def threshold_classify(
    candidates: list[DihedralGroup],
    X: PointCloud,
    upsilon: float,
    cfg: TransportConfig | None = None,
) -> Classification:
    """Apply the all-elements-below-upsilon rule to each candidate group.

    The classification is the largest accepted n when all accepted
    candidates divide it, "none" for an empty accepted set (threshold too
    strict) and "ambiguous" otherwise (threshold too permissive).
    """
    if upsilon <= 0.0:
        raise ValueError(f"threshold must be positive, got {upsilon}")
    max_by_candidate = {
        G.n: max(dist for _, dist in elementwise_distances(G, X, cfg)) for G in candidates
    }
    accepted, outcome = _classify(max_by_candidate, upsilon)
    outcomes = tuple(
        ThresholdOutcome(n, max_by_candidate[n], max_by_candidate[n] < upsilon)
        for n in sorted(max_by_candidate)
    )
    return Classification(upsilon=upsilon, outcomes=outcomes, accepted=accepted, outcome=outcome)


def default_grid(max_by_candidate: dict[int, float], points: int = 200) -> np.ndarray:
    """Log-spaced grid from half the smallest to twice the largest distance.

    Identity entries are exactly zero, so only positive distances anchor the
    range; a fully invariant cloud (all distances ~ 0) falls back to a fixed
    span around the numerical noise floor.
    """
    positive = [d for d in max_by_candidate.values() if d > 0.0]
    if not positive:
        return np.logspace(-12, 0, points)
    return np.logspace(math.log10(0.5 * min(positive)), math.log10(2.0 * max(positive)), points)


def threshold_sweep(
    candidates: list[DihedralGroup],
    X: PointCloud,
    grid: np.ndarray | list[float] | None = None,
    cfg: TransportConfig | None = None,
) -> SweepReport:
    """Classify across a threshold grid and extract the robust windows.

    Distances are computed once per candidate and reused.  Windows are the
    maximal intervals between consecutive crossing thresholds on which the
    classification is one constant integer; the final window is open-ended
    (hi = inf) when the top segment classifies cleanly.
    """
    max_by_candidate = {
        G.n: max(dist for _, dist in elementwise_distances(G, X, cfg)) for G in candidates
    }
    if grid is None:
        grid = default_grid(max_by_candidate)
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("threshold grid must be nonempty")
    if np.any(grid <= 0.0) or np.any(np.diff(grid) < 0.0):
        raise ValueError("threshold grid must be positive and ascending")

    accepted_sets: list[frozenset[int]] = []
    classifications: list[int | str] = []
    for upsilon in grid:
        accepted, outcome = _classify(max_by_candidate, float(upsilon))
        accepted_sets.append(accepted)
        classifications.append(outcome)

    robust_windows = _exact_windows(max_by_candidate)
    return SweepReport(
        candidates=tuple(sorted(max_by_candidate)),
        max_by_candidate=max_by_candidate,
        grid=grid,
        accepted_sets=tuple(accepted_sets),
        classifications=tuple(classifications),
        robust_windows=robust_windows,
    )


def _exact_windows(max_by_candidate: dict[int, float]) -> tuple[tuple[float, float, int], ...]:
    """Maximal constant-integer-classification intervals between crossings.

    The accepted set only changes where upsilon crosses one of the
    per-candidate maximum distances, so the classification is piecewise
    constant on the open segments between consecutive distinct crossings.
    Adjacent segments with the same integer outcome are merged.
    """
    crossings = sorted(set(max_by_candidate.values()))
    edges = crossings + [math.inf]
    segments: list[tuple[float, float, int]] = []
    for lo, hi in zip(edges, edges[1:]):
        if math.isinf(hi):
            probe = 2.0 * lo if lo > 0.0 else 1.0
        else:
            probe = 0.5 * (lo + hi)
        if probe <= 0.0:
            continue
        _, outcome = _classify(max_by_candidate, probe)
        if isinstance(outcome, int):
            if segments and segments[-1][1] == lo and segments[-1][2] == outcome:
                segments[-1] = (segments[-1][0], hi, outcome)
            else:
                segments.append((lo, hi, outcome))
    return tuple(segments)

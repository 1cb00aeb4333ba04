"""Phase embedding of 1-D periodic signals onto the unit circle.

A real signal is lifted to its analytic signal (frequency-domain quadrature
construction), reduced to its instantaneous phase, and projected to the unit
circle, where rotational structure of the original rhythm becomes geometric
symmetry a point-cloud method can see.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import PointCloud

__all__ = [
    "DegeneratePhaseError",
    "TimeSeries",
    "analytic_signal",
    "instantaneous_phase",
    "phase_embed",
    "average_cycles",
    "load_gait_manifest",
    "select_gait_series",
]

# Analytic-signal samples closer to the origin than this have no usable phase.
PHASE_RADIUS_FLOOR = 1e-12


class DegeneratePhaseError(ValueError):
    """Raised when an analytic-signal sample is too close to the origin."""


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A finite real-valued signal, optionally tagged with a cycle length."""

    samples: np.ndarray
    cycle_length: int | None = None

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64).ravel()
        if samples.size < 4:
            raise ValueError(f"time series needs at least 4 samples, got {samples.size}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("time series samples must be finite")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size


def analytic_signal(series: TimeSeries) -> np.ndarray:
    """Complex signal whose real part is the detrended input.

    The mean is removed first (a DC offset would swamp the phase), then the
    spectrum is reweighted: DC and Nyquist bins kept at unit weight, positive
    frequencies doubled, negative frequencies zeroed.  The inverse transform
    returns the analytic signal; its real part reproduces the detrended
    input to FFT precision.
    """
    x = series.samples - series.samples.mean()
    n = x.size
    spectrum = np.fft.fft(x)
    weights = np.zeros(n)
    weights[0] = 1.0
    if n % 2 == 0:
        weights[n // 2] = 1.0
        weights[1 : n // 2] = 2.0
    else:
        weights[1 : (n + 1) // 2] = 2.0
    return np.fft.ifft(spectrum * weights)


def instantaneous_phase(Z: np.ndarray) -> np.ndarray:
    """Per-sample angle of the analytic signal, in (-pi, pi].

    Raises DegeneratePhaseError if any sample sits within
    PHASE_RADIUS_FLOOR of the origin (e.g. a constant input signal).
    """
    Z = np.asarray(Z, dtype=np.complex128)
    radii = np.abs(Z)
    small = np.nonzero(radii < PHASE_RADIUS_FLOOR)[0]
    if small.size:
        raise DegeneratePhaseError(
            f"analytic signal vanishes at sample index {int(small[0])}; phase is undefined"
        )
    return np.angle(Z)


def phase_embed(series: TimeSeries) -> PointCloud:
    """Map each sample to exp(i * phase) on the unit circle.

    The embedding ignores amplitude entirely, so any positive rescaling of
    the input produces the same cloud.
    """
    phase = instantaneous_phase(analytic_signal(series))
    return PointCloud(np.column_stack((np.cos(phase), np.sin(phase))))


def average_cycles(series: list[TimeSeries]) -> TimeSeries:
    """Pointwise mean of equal-length series (noise falls as 1/sqrt(count))."""
    if not series:
        raise ValueError("need at least one series to average")
    length = len(series[0])
    for s in series[1:]:
        if len(s) != length:
            raise ValueError(f"series lengths differ: {length} vs {len(s)}")
    stacked = np.vstack([s.samples for s in series])
    cycle_lengths = {s.cycle_length for s in series}
    cycle = series[0].cycle_length if len(cycle_lengths) == 1 else None
    return TimeSeries(stacked.mean(axis=0), cycle_length=cycle)


_MANIFEST_KEYS = ("subject", "condition", "joint", "leg", "file")


def load_gait_manifest(path: str | Path) -> list[dict]:
    """Read a manifest mapping (subject, condition, joint, leg) to CSV files.

    The manifest is a JSON list of records with exactly those keys plus
    ``file`` (path relative to the manifest's directory).
    """
    from .fileio import ParseError

    path = Path(path)
    try:
        entries = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid manifest JSON: {exc}") from None
    if not isinstance(entries, list):
        raise ParseError(f"{path}: manifest must be a JSON list of records")
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or any(key not in entry for key in _MANIFEST_KEYS):
            raise ParseError(f"{path}: record {i} must carry keys {', '.join(_MANIFEST_KEYS)}")
    return entries


def select_gait_series(
    manifest_path: str | Path,
    condition: str,
    subjects: list[int] | None = None,
    joints: list[str] | None = None,
    leg: str | None = None,
    column: str | None = None,
) -> list[TimeSeries]:
    """Load every manifest series matching the selection flags.

    ``subjects``/``joints``/``leg`` of None match everything.  How the
    selected series are combined (typically a pointwise average before
    embedding) is the caller's choice, so any preprocessing convention stays
    reproducible from the flags alone.
    """
    from .fileio import read_timeseries_csv

    manifest_path = Path(manifest_path)
    entries = load_gait_manifest(manifest_path)
    wanted_subjects = {int(s) for s in subjects} if subjects is not None else None
    wanted_joints = {j.lower() for j in joints} if joints is not None else None
    selected = []
    for entry in entries:
        if str(entry["condition"]).lower() != condition.lower():
            continue
        if wanted_subjects is not None and int(entry["subject"]) not in wanted_subjects:
            continue
        if wanted_joints is not None and str(entry["joint"]).lower() not in wanted_joints:
            continue
        if leg is not None and str(entry["leg"]).lower() != leg.lower():
            continue
        selected.append(read_timeseries_csv(manifest_path.parent / entry["file"], column=column))
    if not selected:
        raise ValueError(
            f"no series match condition={condition!r}, subjects={subjects}, joints={joints}, leg={leg!r}"
        )
    return selected

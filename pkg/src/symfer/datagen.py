"""Synthetic dataset generators.

Two families: trajectories of the Chossat-Golubitsky D_n-equivariant map on
the complex plane, and motif-replicated clouds with exact dihedral symmetry.
Both support seeded observational noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import PointCloud, replicate_motif, sample_fundamental_domain

__all__ = [
    "CGParams",
    "NoiseSpec",
    "DivergenceError",
    "cg_step",
    "cg_trajectory",
    "add_noise",
    "make_motif_dataset",
    "make_d12_dataset",
]

DEFAULT_ESCAPE_RADIUS = 1e6


class DivergenceError(RuntimeError):
    """Raised when a map iterate escapes the bounded-attractor regime."""


@dataclass(frozen=True)
class CGParams:
    """Parameters of the Chossat-Golubitsky family of D_n-equivariant maps.

        f(z) = (alpha*|z|^2 + beta*(z^n + conj(z)^n)/2 + lambda_map) * z
               + gamma * conj(z)^(n-1)

    ``lambda_map`` is the map's own bifurcation parameter, unrelated to any
    inference sharpness.  Defaults reproduce the classic D_3 attractor.
    """

    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.5
    lambda_map: float = -1.804
    n: int = 3

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"map symmetry order n must be >= 2, got {self.n}")
        for name in ("alpha", "beta", "gamma", "lambda_map"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"map parameter {name} must be finite")


@dataclass(frozen=True)
class NoiseSpec:
    """Isotropic Gaussian observational noise, per coordinate, seeded."""

    sigma: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.sigma < 0.0:
            raise ValueError(f"noise sigma must be >= 0, got {self.sigma}")


def cg_step(z: complex, params: CGParams, escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> complex:
    """One application of the map in complex arithmetic.

    Raises DivergenceError if the image leaves the escape radius or turns
    non-finite.
    """
    z = complex(z)
    n = params.n
    zn = z**n
    # (z^n + conj(z)^n)/2 is the real part of z^n.
    coeff = params.alpha * (z.real * z.real + z.imag * z.imag) + params.beta * zn.real + params.lambda_map
    out = coeff * z + params.gamma * z.conjugate() ** (n - 1)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)) or abs(out) > escape_radius:
        raise DivergenceError(f"map iterate escaped (|f(z)| > {escape_radius:g})")
    return out


def cg_trajectory(
    params: CGParams,
    count: int,
    z0: complex = 0.1 + 0.1j,
    transient: int = 1000,
    noise: NoiseSpec | None = None,
    dynamical_noise: bool = False,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
) -> PointCloud:
    """Iterate the map from z0, drop the transient, record ``count`` points.

    By default noise (when given) is observational: it perturbs the recorded
    points only.  With ``dynamical_noise=True`` the perturbation is instead
    injected into the recursion at every step, transient included.
    Deterministic for a fixed NoiseSpec seed.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if transient < 0:
        raise ValueError(f"transient must be >= 0, got {transient}")
    sigma = noise.sigma if noise is not None else 0.0
    rng = np.random.default_rng(noise.seed) if (dynamical_noise and noise is not None) else None
    z = complex(z0)
    points = np.empty((count, 2), dtype=np.float64)
    recorded = 0
    for i in range(transient + count):
        try:
            z = cg_step(z, params, escape_radius)
        except DivergenceError as exc:
            raise DivergenceError(f"{exc} at iterate {i}") from None
        if rng is not None and sigma > 0.0:
            eps = rng.normal(0.0, sigma, size=2)
            z = complex(z.real + eps[0], z.imag + eps[1])
        if i >= transient:
            points[recorded, 0] = z.real
            points[recorded, 1] = z.imag
            recorded += 1
    cloud = PointCloud(points)
    if noise is not None and not dynamical_noise:
        cloud = add_noise(cloud, noise)
    return cloud


def add_noise(X: PointCloud, noise: NoiseSpec) -> PointCloud:
    """Independent Gaussian perturbation per coordinate, order preserved."""
    rng = np.random.default_rng(noise.seed)
    return PointCloud(X.points + rng.normal(0.0, noise.sigma, size=X.points.shape))


def make_motif_dataset(
    n: int,
    seed: int,
    sigma: float = 0.0,
    motif_size: int = 8,
    radius_range: tuple[float, float] = (0.5, 1.5),
) -> PointCloud:
    """Cloud with exact (or noisy) D_n symmetry built from a random motif.

    Samples ``motif_size`` points in the fundamental sector of D_n,
    replicates them under all 2n group elements (2n * motif_size points in
    total) and optionally adds isotropic Gaussian noise.  Motif and noise
    draw independent streams from the master seed.
    """
    root = np.random.SeedSequence(seed)
    motif_seq, noise_seq = root.spawn(2)
    motif = sample_fundamental_domain(n, motif_size, radius_range, np.random.default_rng(motif_seq))
    cloud = replicate_motif(motif, n)
    if sigma > 0.0:
        noise_seed = int(noise_seq.generate_state(1, np.uint64)[0])
        cloud = add_noise(cloud, NoiseSpec(sigma=sigma, seed=noise_seed))
    return cloud


def make_d12_dataset(seed: int, sigma: float = 0.05) -> PointCloud:
    """Noisy 192-point cloud with near-D_12 symmetry (8-point motif)."""
    return make_motif_dataset(12, seed, sigma=sigma, motif_size=8, radius_range=(0.5, 1.5))

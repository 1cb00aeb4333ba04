"""Finite dihedral groups and their isometric action on planar point clouds.

The plane is identified with the complex numbers: rotations act as
multiplication by roots of unity, reflections as complex conjugation followed
by a rotation.  The reflection ``s0`` fixes the x-axis and ``s_k = r_k s_0``,
which pins a canonical labelling of all 2n elements of D_n.  Points are stored
as real coordinate pairs; the complex view is a computational device.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ROTATION = "rotation"
REFLECTION = "reflection"

__all__ = [
    "ROTATION",
    "REFLECTION",
    "GroupElement",
    "DihedralGroup",
    "PointCloud",
    "apply_element",
    "compose",
    "inverse",
    "conjugate_element",
    "sample_fundamental_domain",
    "replicate_motif",
]


@dataclass(frozen=True)
class GroupElement:
    """A rotation ``r_k`` or reflection ``s_k`` of the dihedral group D_n."""

    kind: str
    k: int
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (ROTATION, REFLECTION):
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"group parameter n must be >= 1, got {self.n}")
        if not 0 <= self.k < self.n:
            raise ValueError(f"element index {self.k} outside [0, {self.n})")

    @property
    def is_identity(self) -> bool:
        return self.kind == ROTATION and self.k == 0

    @property
    def label(self) -> str:
        """Compact name, e.g. ``r3`` or ``s0``, used in serialized reports."""
        return ("r" if self.kind == ROTATION else "s") + str(self.k)


@dataclass(frozen=True)
class DihedralGroup:
    """The dihedral group D_n of order 2n.

    ``n = 1`` denotes the degenerate two-element group {e, s0}, the floor of
    the candidate lattice; n >= 2 gives the standard symmetry group of the
    regular n-gon.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dihedral parameter n must be >= 1, got {self.n}")

    @property
    def order(self) -> int:
        return 2 * self.n

    def identity(self) -> GroupElement:
        return GroupElement(ROTATION, 0, self.n)

    def elements(self) -> list[GroupElement]:
        """All 2n elements: rotations first (k ascending), then reflections."""
        rotations = [GroupElement(ROTATION, k, self.n) for k in range(self.n)]
        reflections = [GroupElement(REFLECTION, k, self.n) for k in range(self.n)]
        return rotations + reflections


@dataclass(frozen=True, eq=False)
class PointCloud:
    """An ordered set of N points in the plane, stored as an (N, 2) array.

    The cloud stands for the uniform empirical measure on its points.  All
    coordinates must be finite and N >= 1.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"expected an (N, 2) array of points, got shape {pts.shape}")
        if pts.shape[0] < 1:
            raise ValueError("point cloud must contain at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point cloud coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_complex(cls, z: np.ndarray) -> "PointCloud":
        z = np.asarray(z, dtype=np.complex128).ravel()
        return cls(np.column_stack((z.real, z.imag)))

    def to_complex(self) -> np.ndarray:
        return self.points[:, 0] + 1j * self.points[:, 1]

    def __len__(self) -> int:
        return self.points.shape[0]


def _unit_root(k: int, n: int) -> complex:
    """exp(2*pi*i*k/n), exact for k = 0."""
    if k == 0:
        return 1.0 + 0.0j
    angle = 2.0 * np.pi * k / n
    return complex(np.cos(angle), np.sin(angle))


def apply_element(g: GroupElement, X: PointCloud) -> PointCloud:
    """Apply a group element to every point, preserving input order.

    Rotations multiply by exp(2*pi*i*k/n); reflections conjugate first, so
    ``s0`` maps (x, y) to (x, -y).
    """
    z = X.to_complex()
    if g.kind == REFLECTION:
        z = np.conj(z)
    return PointCloud.from_complex(_unit_root(g.k, g.n) * z)


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """The element acting as ``a`` after ``b`` (i.e. the map a.b)."""
    if a.n != b.n:
        raise ValueError(f"cannot compose elements of D_{a.n} and D_{b.n}")
    n = a.n
    if a.kind == ROTATION:
        # r_a r_b = r_{a+b},  r_a s_b = s_{a+b}
        return GroupElement(b.kind, (a.k + b.k) % n, n)
    if b.kind == ROTATION:
        # s_a r_b = s_{a-b}
        return GroupElement(REFLECTION, (a.k - b.k) % n, n)
    # s_a s_b = r_{a-b}
    return GroupElement(ROTATION, (a.k - b.k) % n, n)


def inverse(g: GroupElement) -> GroupElement:
    """Group inverse; reflections are involutions."""
    if g.kind == REFLECTION:
        return g
    return GroupElement(ROTATION, (-g.k) % g.n, g.n)


def conjugate_element(g: GroupElement, h: GroupElement) -> GroupElement:
    """Return g^-1 h g in canonical (kind, k) form.

    Reduction uses the dihedral relation ``s r s = r^-1``; both elements must
    belong to the same D_n.
    """
    if g.n != h.n:
        raise ValueError(f"cannot conjugate across groups: D_{h.n} element by D_{g.n} element")
    return compose(inverse(g), compose(h, g))


def sample_fundamental_domain(
    n: int,
    count: int,
    radius_range: tuple[float, float],
    rng: np.random.Generator,
) -> PointCloud:
    """Draw points uniformly (in polar coordinates) from the sector of D_n.

    The sector is {rho * exp(i*theta) : rho in [r_min, r_max], theta in
    [0, pi/n)}, a fundamental domain for the D_n action away from the origin.
    Deterministic for a fixed generator state.
    """
    if n < 1:
        raise ValueError(f"sector parameter n must be >= 1, got {n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    r_min, r_max = radius_range
    if not (0.0 < r_min <= r_max):
        raise ValueError(f"invalid radius range ({r_min}, {r_max}): need 0 < r_min <= r_max")
    radii = rng.uniform(r_min, r_max, size=count)
    angles = rng.uniform(0.0, np.pi / n, size=count)
    return PointCloud.from_complex(radii * np.exp(1j * angles))


def replicate_motif(motif: PointCloud, n: int) -> PointCloud:
    """Concatenate the images of ``motif`` under all 2n elements of D_n.

    The result has 2n * |motif| points and is exactly D_n-invariant as a
    multiset (up to floating-point rotation error).
    """
    group = DihedralGroup(n)
    parts = [apply_element(g, motif).points for g in group.elements()]
    return PointCloud(np.vstack(parts))

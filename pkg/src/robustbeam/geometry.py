"""Array geometries and plane-wave propagation delays.

Supported layouts are uniform linear arrays (ULA, element positions on a
line) and uniform planar arrays (UPA, elements on a rectangular grid).
Delays are always taken relative to the array centroid, so every geometry
is recentred on construction.

Angle conventions:

* ULA: a single angle ``theta``; element at coordinate ``x`` sees delay
  ``x * sin(theta) / wave_speed``.
* UPA: elevation ``theta`` and azimuth ``phi`` (spherical convention);
  element at ``(x, y)`` sees delay
  ``(x * sin(theta) * cos(phi) + y * sin(theta) * sin(phi)) / wave_speed``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ArrayGeometry",
    "AngleOfArrival",
    "UncertaintyInterval",
    "make_ula",
    "make_upa",
    "delays",
    "aperture",
]


@dataclass(frozen=True)
class ArrayGeometry:
    """Element positions (meters) and propagation speed (m/s).

    Positions are stored as an ``(M, d)`` array with ``d`` in {1, 2} and are
    recentred so the centroid sits at the origin; delays computed from an
    ``ArrayGeometry`` are therefore relative to the array center.
    """

    positions: np.ndarray
    wave_speed: float

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if pos.shape[0] == 1 and pos.shape[1] > pos.shape[0]:
            # a flat list of scalars is a 1-D (linear) layout
            pos = pos.T
        if pos.shape[0] < 2:
            raise ValueError(f"need at least 2 elements, got {pos.shape[0]}")
        if pos.shape[1] not in (1, 2):
            raise ValueError(f"positions must be 1-D or 2-D points, got {pos.shape[1]}-D")
        pos = pos - pos.mean(axis=0)
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "wave_speed", float(self.wave_speed))
        if not self.wave_speed > 0:
            raise ValueError("wave_speed must be positive")
        diffs = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(diffs, axis=-1)
        np.fill_diagonal(dist, np.inf)
        if dist.min() == 0.0:
            raise ValueError("element positions must be pairwise distinct")

    @property
    def num_elements(self) -> int:
        return self.positions.shape[0]

    @property
    def ndim_angles(self) -> int:
        """Number of arrival-angle coordinates this layout resolves."""
        return self.positions.shape[1]


@dataclass(frozen=True)
class AngleOfArrival:
    """Arrival direction in radians: ``(theta,)`` for a ULA, ``(theta, phi)`` for a UPA."""

    angles: np.ndarray

    def __post_init__(self):
        ang = np.atleast_1d(np.asarray(self.angles, dtype=float))
        if ang.ndim != 1 or ang.size not in (1, 2):
            raise ValueError("angles must hold 1 or 2 values")
        if not np.all(np.isfinite(ang)):
            raise ValueError("angles must be finite")
        ang.setflags(write=False)
        object.__setattr__(self, "angles", ang)

    @property
    def ndim(self) -> int:
        return self.angles.size


@dataclass(frozen=True)
class UncertaintyInterval:
    """Box of possible arrival angles: ``[center - half_width, center + half_width]`` per dimension."""

    center: np.ndarray
    half_width: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.center, dtype=float))
        h = np.atleast_1d(np.asarray(self.half_width, dtype=float))
        if c.shape != h.shape or c.ndim != 1 or c.size not in (1, 2):
            raise ValueError("center and half_width must both hold 1 or 2 values")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(h))):
            raise ValueError("interval bounds must be finite")
        if not np.all(h > 0):
            raise ValueError("half_width must be positive in every dimension")
        c.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "half_width", h)

    @property
    def ndim(self) -> int:
        return self.center.size

    @property
    def lo(self) -> np.ndarray:
        return self.center - self.half_width

    @property
    def hi(self) -> np.ndarray:
        return self.center + self.half_width

    def midpoint(self) -> AngleOfArrival:
        return AngleOfArrival(self.center.copy())

    def contains(self, aoa: AngleOfArrival, tol: float = 0.0) -> bool:
        a = aoa.angles
        return bool(np.all(a >= self.lo - tol) and np.all(a <= self.hi + tol))


def make_ula(num_elements: int, spacing: float, wave_speed: float) -> ArrayGeometry:
    """Uniform linear array of ``num_elements`` centered on the origin.

    Parameters
    ----------
    num_elements : int
        Element count, at least 2.
    spacing : float
        Inter-element spacing in meters.
    wave_speed : float
        Propagation speed in m/s.
    """
    if num_elements < 2:
        raise ValueError("ULA needs at least 2 elements")
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    idx = np.arange(num_elements, dtype=float)
    x = (idx - (num_elements - 1) / 2.0) * spacing
    return ArrayGeometry(positions=x[:, None], wave_speed=wave_speed)


def make_upa(nx: int, ny: int, dx: float, dy: float, wave_speed: float) -> ArrayGeometry:
    """Uniform planar array on an ``nx`` x ``ny`` grid, centered on the origin."""
    if nx < 2 or ny < 2:
        raise ValueError("UPA needs at least 2 elements per axis")
    if not (dx > 0 and dy > 0):
        raise ValueError("spacings must be positive")
    ix = (np.arange(nx, dtype=float) - (nx - 1) / 2.0) * dx
    iy = (np.arange(ny, dtype=float) - (ny - 1) / 2.0) * dy
    gx, gy = np.meshgrid(ix, iy, indexing="ij")
    pos = np.column_stack([gx.ravel(), gy.ravel()])
    return ArrayGeometry(positions=pos, wave_speed=wave_speed)


def delays(geom: ArrayGeometry, aoa: AngleOfArrival) -> np.ndarray:
    """Per-element plane-wave delays in seconds, relative to array center.

    The returned vector sums to zero because positions are centered.
    """
    if aoa.ndim != geom.ndim_angles:
        raise ValueError(
            f"angle has {aoa.ndim} dimension(s) but geometry resolves {geom.ndim_angles}"
        )
    if geom.ndim_angles == 1:
        theta = aoa.angles[0]
        return geom.positions[:, 0] * np.sin(theta) / geom.wave_speed
    theta, phi = aoa.angles
    ux = np.sin(theta) * np.cos(phi)
    uy = np.sin(theta) * np.sin(phi)
    return (geom.positions[:, 0] * ux + geom.positions[:, 1] * uy) / geom.wave_speed


def interval_grid(interval: UncertaintyInterval, per_dim: int) -> list[AngleOfArrival]:
    """Uniform inclusive grid over the interval box (tensor product for 2-D)."""
    axes = [
        np.linspace(lo, hi, per_dim)
        for lo, hi in zip(interval.lo, interval.hi)
    ]
    if interval.ndim == 1:
        return [AngleOfArrival(np.array([a])) for a in axes[0]]
    g0, g1 = np.meshgrid(axes[0], axes[1], indexing="ij")
    return [AngleOfArrival(np.array([a, b])) for a, b in zip(g0.ravel(), g1.ravel())]


def aperture(
    geom: ArrayGeometry,
    interval: UncertaintyInterval,
    snapshot_span: float,
    grid_points: int = 64,
) -> float:
    """Total time extent seen by the array over an uncertainty interval.

    Equals ``snapshot_span`` plus the worst-case delay spread, where the
    spread is maximized over a uniform grid on the interval (64 points per
    dimension by default).
    """
    tau_max = -np.inf
    tau_min = np.inf
    for aoa in interval_grid(interval, grid_points):
        tau = delays(geom, aoa)
        tau_max = max(tau_max, tau.max())
        tau_min = min(tau_min, tau.min())
    return float(snapshot_span + (tau_max - tau_min))


def max_delay_magnitude(
    geom: ArrayGeometry, interval: UncertaintyInterval, grid_points: int = 64
) -> float:
    """Largest ``|delay|`` over a uniform grid on the interval; used to pad basis domains."""
    worst = 0.0
    for aoa in interval_grid(interval, grid_points):
        worst = max(worst, float(np.abs(delays(geom, aoa)).max()))
    return worst

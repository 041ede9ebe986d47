"""Angle-dependent forward model and known-angle least-squares recovery.

The forward matrix maps basis coefficients to demodulated array samples.
Rows are ordered snapshot-major: row ``l`` corresponds to snapshot ``n``
and element ``m`` with ``l = n * M + m`` (zero-based), matching the
stacking used everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficiencyError
from .geometry import AngleOfArrival, ArrayGeometry, delays
from .slepian import SlepianBasis, eval_basis

__all__ = ["SamplingPlan", "ForwardModel", "forward_matrix", "ls_recover", "synthesize"]


@dataclass(frozen=True)
class SamplingPlan:
    """Snapshot times in seconds and the nominal sample rate in Hz."""

    times: np.ndarray
    rate: float

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.times, dtype=float))
        if t.ndim != 1 or t.size < 1:
            raise ValueError("need at least one snapshot time")
        if np.any(np.diff(t) <= 0):
            raise ValueError("snapshot times must be strictly increasing")
        if not self.rate > 0:
            raise ValueError("rate must be positive")
        t.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "rate", float(self.rate))

    @property
    def num_snapshots(self) -> int:
        return self.times.size

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])


def uniform_plan(num_snapshots: int, rate: float, t_start: float = 0.0) -> SamplingPlan:
    """Snapshots at ``t_start + n / rate`` for ``n = 0 .. num_snapshots - 1``."""
    times = t_start + np.arange(num_snapshots) / rate
    return SamplingPlan(times=times, rate=rate)


@dataclass(frozen=True)
class ForwardModel:
    """Complex forward matrix of shape ``(M * N, K)`` with its metadata."""

    matrix: np.ndarray
    aoa: AngleOfArrival
    carrier: float
    num_elements: int
    num_snapshots: int

    @property
    def basis_size(self) -> int:
        return self.matrix.shape[1]

    def row_index(self, element: int, snapshot: int) -> int:
        """Row of ``(element, snapshot)`` in the snapshot-major stacking."""
        return snapshot * self.num_elements + element

    def element_snapshot(self, row: int) -> tuple[int, int]:
        """Inverse of :meth:`row_index`."""
        return row % self.num_elements, row // self.num_elements


def forward_matrix(
    geom: ArrayGeometry,
    basis: SlepianBasis,
    plan: SamplingPlan,
    carrier: float,
    aoa: AngleOfArrival,
) -> ForwardModel:
    """Assemble the forward matrix for one arrival angle.

    Entry ``[l, k]`` with ``l = n * M + m`` equals
    ``exp(-2j*pi*carrier*tau_m) * psi_k(t_n - tau_m)`` where ``tau_m`` is the
    element delay at the given angle.  Raises
    :class:`~robustbeam.errors.OutOfDomainError` if any shifted sample time
    leaves the basis interval, which signals that the basis was built on too
    small a domain.
    """
    tau = delays(geom, aoa)
    m_count = geom.num_elements
    n_count = plan.num_snapshots
    # shifted sample times, snapshot-major: entry [n, m] = t_n - tau_m
    shifted = plan.times[:, None] - tau[None, :]
    psi = eval_basis(basis, shifted.ravel())
    psi = psi.reshape(n_count, m_count, basis.size)
    phase = np.exp(-2j * np.pi * carrier * tau)
    matrix = phase[None, :, None] * psi
    matrix = matrix.reshape(m_count * n_count, basis.size)
    matrix.setflags(write=False)
    return ForwardModel(
        matrix=matrix,
        aoa=aoa,
        carrier=float(carrier),
        num_elements=m_count,
        num_snapshots=n_count,
    )


def _lstsq_full_rank(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Least squares via SVD with an explicit column-rank check."""
    solution, _, rank, _ = np.linalg.lstsq(matrix, rhs, rcond=None)
    if rank < matrix.shape[1]:
        raise RankDeficiencyError(
            f"matrix has numerical rank {rank} < {matrix.shape[1]} columns", rank
        )
    return solution


def ls_recover(model: ForwardModel | np.ndarray, samples: np.ndarray) -> np.ndarray:
    """Recover basis coefficients from array samples by least squares.

    Uses a rank-revealing orthogonal factorization (SVD); raises
    :class:`~robustbeam.errors.RankDeficiencyError` when the matrix loses
    full column rank.
    """
    matrix = model.matrix if isinstance(model, ForwardModel) else np.asarray(model)
    samples = np.asarray(samples)
    if samples.shape[0] != matrix.shape[0]:
        raise ValueError(
            f"sample vector length {samples.shape[0]} != matrix rows {matrix.shape[0]}"
        )
    return _lstsq_full_rank(matrix, samples)


def synthesize(basis: SlepianBasis, coeffs: np.ndarray, times) -> np.ndarray:
    """Superpose basis functions with the given coefficients at the requested times."""
    coeffs = np.asarray(coeffs)
    if coeffs.shape[0] != basis.size:
        raise ValueError(f"expected {basis.size} coefficients, got {coeffs.shape[0]}")
    return eval_basis(basis, times) @ coeffs

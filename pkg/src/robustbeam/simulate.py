"""Test-signal synthesis, noisy array sampling, and evaluation metrics.

Measurements are always generated directly from the sum-of-tones signal
model, never through the Slepian basis, so basis representation error is
part of every experiment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forward import ForwardModel, SamplingPlan, forward_matrix, ls_recover
from .geometry import AngleOfArrival, ArrayGeometry, delays
from .slepian import SlepianBasis

__all__ = [
    "SignalSpec",
    "ArrayMeasurement",
    "Metrics",
    "derive_seed",
    "random_signal",
    "signal_values",
    "sample_array",
    "reference_coeffs",
    "nmse",
    "beamformed_snr",
]

# beamformed SNR is reported at most at this value (exact reconstructions)
SNR_CAP_DB = 300.0


@dataclass(frozen=True)
class SignalSpec:
    """Complex baseband sum of tones, bandlimited to ``[-bandlimit, +bandlimit]``."""

    bandlimit: float
    frequencies: np.ndarray
    amplitudes: np.ndarray
    carrier: float

    def __post_init__(self):
        f = np.atleast_1d(np.asarray(self.frequencies, dtype=float))
        a = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex))
        if f.size < 1 or f.shape != a.shape:
            raise ValueError("need matching, non-empty frequency and amplitude lists")
        if np.any(np.abs(f) > self.bandlimit):
            raise ValueError("tone frequencies must lie within the bandlimit")
        f.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "amplitudes", a)

    @property
    def num_tones(self) -> int:
        return self.frequencies.size


@dataclass(frozen=True)
class ArrayMeasurement:
    """Snapshot-major stacked array samples with their noise bookkeeping."""

    samples: np.ndarray
    nominal_snr_db: float | None
    noise_variance: float
    rng_seed: int | None
    true_aoa: AngleOfArrival


@dataclass(frozen=True)
class Metrics:
    nmse: float
    beamformed_snr_db: float


def derive_seed(*path: int) -> int:
    """Deterministic integer seed for a stream identified by a tuple of integers.

    The rule is a single SeedSequence expansion, so independent streams
    (trials, noise draws) are reproducible and well separated.
    """
    seq = np.random.SeedSequence([int(p) for p in path])
    return int(seq.generate_state(1, np.uint64)[0])


def _as_rng(rng) -> tuple[np.random.Generator, int | None]:
    if isinstance(rng, np.random.Generator):
        return rng, None
    seed = int(rng)
    return np.random.default_rng(seed), seed


def random_signal(bandlimit: float, num_tones: int, rng) -> SignalSpec:
    """Draw a random sum-of-tones spec: uniform in-band frequencies, unit-magnitude
    amplitudes with uniform random phase."""
    if num_tones < 1:
        raise ValueError("num_tones must be at least 1")
    gen, _ = _as_rng(rng)
    freqs = gen.uniform(-bandlimit, bandlimit, size=num_tones)
    phases = gen.uniform(0.0, 2.0 * np.pi, size=num_tones)
    amps = np.exp(1j * phases)
    return SignalSpec(
        bandlimit=float(bandlimit), frequencies=freqs, amplitudes=amps, carrier=0.0
    )


def signal_values(spec: SignalSpec, times) -> np.ndarray:
    """Baseband signal samples ``sum_i a_i * exp(2j*pi*f_i*t)``."""
    t = np.asarray(times, dtype=float)
    return np.exp(2j * np.pi * np.outer(t, spec.frequencies)) @ spec.amplitudes


def clean_array_samples(
    geom: ArrayGeometry,
    spec: SignalSpec,
    plan: SamplingPlan,
    aoa: AngleOfArrival,
    carrier: float,
) -> np.ndarray:
    """Noise-free snapshot-major samples of the tone signal through the array."""
    tau = delays(geom, aoa)
    shifted = plan.times[:, None] - tau[None, :]
    vals = signal_values(spec, shifted.ravel()).reshape(shifted.shape)
    phase = np.exp(-2j * np.pi * carrier * tau)
    return (phase[None, :] * vals).ravel()


def sample_array(
    geom: ArrayGeometry,
    spec: SignalSpec,
    plan: SamplingPlan,
    true_aoa: AngleOfArrival,
    nominal_snr_db: float | None,
    rng=None,
    carrier: float | None = None,
) -> ArrayMeasurement:
    """Simulate one noisy measurement of the tone signal.

    ``nominal_snr_db=None`` (or ``inf``) disables noise.  Noise is complex
    circular Gaussian with per-sample variance set to
    ``mean clean power / 10**(snr_db / 10)``.
    """
    fc = spec.carrier if carrier is None else float(carrier)
    clean = clean_array_samples(geom, spec, plan, true_aoa, fc)
    noiseless = nominal_snr_db is None or np.isinf(nominal_snr_db)
    if noiseless:
        return ArrayMeasurement(
            samples=clean,
            nominal_snr_db=None,
            noise_variance=0.0,
            rng_seed=None,
            true_aoa=true_aoa,
        )
    if rng is None:
        raise ValueError("rng is required when noise is enabled")
    gen, seed = _as_rng(rng)
    power = float(np.mean(np.abs(clean) ** 2))
    variance = power / (10.0 ** (nominal_snr_db / 10.0))
    scale = np.sqrt(variance / 2.0)
    noise = scale * (
        gen.standard_normal(clean.shape) + 1j * gen.standard_normal(clean.shape)
    )
    return ArrayMeasurement(
        samples=clean + noise,
        nominal_snr_db=float(nominal_snr_db),
        noise_variance=variance,
        rng_seed=seed,
        true_aoa=true_aoa,
    )


def reference_coeffs(
    geom: ArrayGeometry,
    basis: SlepianBasis,
    plan: SamplingPlan,
    carrier: float,
    true_aoa: AngleOfArrival,
    clean_samples: np.ndarray,
) -> np.ndarray:
    """Known-angle, noise-free benchmark coefficients (least squares at the true angle)."""
    model = forward_matrix(geom, basis, plan, carrier, true_aoa)
    return ls_recover(model, clean_samples)


def nmse(estimate: np.ndarray, reference: np.ndarray) -> float:
    """Normalized error ``||estimate - reference|| / ||reference||``."""
    ref_norm = np.linalg.norm(reference)
    if ref_norm == 0:
        raise ValueError("reference must be nonzero")
    return float(np.linalg.norm(np.asarray(estimate) - np.asarray(reference)) / ref_norm)


def beamformed_snr(estimate: np.ndarray, reference: np.ndarray) -> float:
    """Reconstruction SNR in dB of a beamformer output against the clean signal.

    ``10*log10(||reference||^2 / ||estimate - reference||^2)``, capped at
    300 dB for exact reconstructions.
    """
    estimate = np.asarray(estimate)
    reference = np.asarray(reference)
    if estimate.shape != reference.shape:
        raise ValueError("estimate and reference must have equal length")
    ref_energy = float(np.linalg.norm(reference) ** 2)
    if ref_energy == 0:
        raise ValueError("reference must be nonzero")
    err_energy = float(np.linalg.norm(estimate - reference) ** 2)
    if err_energy == 0:
        return SNR_CAP_DB
    return float(min(10.0 * np.log10(ref_energy / err_energy), SNR_CAP_DB))

"""Domain containers: sampled signals, Fourier spectra, Laguerre spectra,
and the transform matrix."""

import numpy as np

from dataclasses import dataclass

__all__ = [
    "SampledSignal",
    "FourierSpectrum",
    "LaguerreSpectrum",
    "TransformMatrix",
]


@dataclass(frozen=True)
class SampledSignal:
    """Uniformly sampled real signal on [0, duration); values[i] = f(i*step)."""

    values: np.ndarray
    step: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values))
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if len(self.values) < 2:
            raise ValueError("a signal needs at least two samples")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("signal values must be finite")

    @property
    def duration(self) -> float:
        return len(self.values) * self.step

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.values)) * self.step

    @property
    def energy(self) -> float:
        """Rectangle-rule L2 energy, step * sum(f^2)."""
        v = self.values.astype(np.float64)
        return float(self.step * np.dot(v, v))


@dataclass(frozen=True)
class FourierSpectrum:
    """One-sided DFT coefficients on the wavenumber grid k_j = 2*pi*j/duration."""

    coeffs: np.ndarray
    duration: float

    @property
    def wavenumber_step(self) -> float:
        return 2.0 * np.pi / self.duration

    @property
    def wavenumbers(self) -> np.ndarray:
        # computed as j * (2*pi/T) exactly; no accumulated drift
        return np.arange(len(self.coeffs)) * self.wavenumber_step


@dataclass(frozen=True)
class LaguerreSpectrum:
    """Expansion coefficients in the orthonormal basis sqrt(eta) l_m(eta t).

    ``duration`` records the periodization interval of the transform that
    produced the coefficients.
    """

    coeffs: np.ndarray
    eta: float
    duration: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs))
        if self.eta <= 0:
            raise ValueError(f"eta must be positive, got {self.eta}")

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def energy(self) -> float:
        c = self.coeffs.astype(np.float64)
        return float(np.dot(c, c))


@dataclass(frozen=True)
class TransformMatrix:
    """Complex matrix entries(m, j) mapping one-sided Fourier coefficients to
    Laguerre coefficients; rows m = 0..n, columns j = 0..n_freq.

    Plain entries are base_j * ratio_j^m with constant per-column magnitude;
    modified entries additionally carry the periodicity-removal window, so
    spectrum = Re((w/T) entries @ f~) is free of the fictitious period.
    """

    entries: np.ndarray
    eta: float
    duration: float
    modified: bool = False
    ramp_width: float = 0.0

    @property
    def order_max(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def n_freq(self) -> int:
        return self.entries.shape[1] - 1

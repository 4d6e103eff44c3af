"""A-posteriori spectrum truncation from Parseval's relation."""

import numpy as np

from dataclasses import dataclass

from .errors import EmptySpectrumError
from .signals import LaguerreSpectrum, SampledSignal

__all__ = ["TruncationReport", "energy_truncate"]


@dataclass(frozen=True)
class TruncationReport:
    m0: int
    signal_energy: float
    partial_energy: np.ndarray

    def to_dict(self) -> dict:
        return {
            "m0": self.m0,
            "signal_energy": self.signal_energy,
            "retained_energy": float(self.partial_energy[self.m0]),
        }


def energy_truncate(spec: LaguerreSpectrum,
                    signal: SampledSignal) -> tuple[LaguerreSpectrum, TruncationReport]:
    """Cut the spectrum at m0 = argmin_m |E_f - sum_{k<=m} a_k^2|.

    E_f is the rectangle-rule energy of the untruncated signal on its own
    grid.  Ties resolve toward the smaller index (np.argmin returns the
    first minimizer on the nondecreasing cumulative sequence).
    """
    if len(spec) == 0:
        raise EmptySpectrumError("cannot truncate an empty spectrum")
    c = spec.coeffs.astype(np.float64)
    partial = np.cumsum(c * c)
    energy = signal.energy
    m0 = int(np.argmin(np.abs(energy - partial)))
    truncated = LaguerreSpectrum(spec.coeffs[: m0 + 1], spec.eta, spec.duration)
    return truncated, TruncationReport(m0, energy, partial)

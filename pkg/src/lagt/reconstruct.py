"""Inverse transform: sum the Laguerre series on a time grid, or map the
coefficients back to Fourier coefficients through the transposed matrix."""

import numpy as np

from . import _kernels
from .errors import DimensionMismatch
from .laguerre import GUARD_ARGUMENT, laguerre_function_values
from .signals import FourierSpectrum, LaguerreSpectrum, SampledSignal, TransformMatrix

__all__ = ["reconstruct", "reconstruct_signal", "spectrum_to_fourier",
           "fourier_to_signal", "relative_error"]


def reconstruct(spec: LaguerreSpectrum, times) -> np.ndarray:
    """v(t_i) = sum_m a_m sqrt(eta) l_m(eta t_i).

    Grid points with eta*t below the split-recurrence guard go through a
    fused recurrence-dot kernel in O(n) each; larger arguments fall back to
    per-point shift-doubled tables (cached upstream for repeated arguments).
    """
    times = np.asarray(times, dtype=np.float64)
    if np.any(times < 0):
        raise ValueError("grid values must be nonnegative")
    coeffs = spec.coeffs.astype(np.float64)
    xs = spec.eta * times
    out = np.empty(xs.shape)
    below = xs <= GUARD_ARGUMENT
    if np.any(below):
        out[below] = _kernels.laguerre_dot(coeffs, np.ascontiguousarray(xs[below]))
    if not np.all(below):
        above_idx = np.nonzero(~below)[0]
        for x, grp in _group_by_value(xs[above_idx], above_idx):
            table = laguerre_function_values(len(coeffs) - 1, x)
            out[grp] = float(np.dot(coeffs, table))
    return np.sqrt(spec.eta) * out


def _group_by_value(values, indices):
    seen: dict[float, list] = {}
    for x, i in zip(values, indices):
        seen.setdefault(float(x), []).append(i)
    for x, grp in seen.items():
        yield x, np.asarray(grp)


def reconstruct_signal(spec: LaguerreSpectrum, step: float,
                       num_samples: int) -> SampledSignal:
    """Reconstruction on the uniform grid i*step, i = 0..num_samples-1."""
    values = reconstruct(spec, np.arange(num_samples) * step)
    return SampledSignal(values, step)


def spectrum_to_fourier(spec: LaguerreSpectrum,
                        matrix: TransformMatrix) -> FourierSpectrum:
    """f~ = conj(M)^T a for the plain (unmodified) matrix.

    Under this package's calibration the bare transpose needs the complex
    conjugate, because plain entries carry the analysis multipliers while
    the Fourier integral of each basis function is their conjugate.  The
    inverse DFT of the result reproduces the duration-periodized
    reconstruction, so signals with f(0) != f(T) show Gibbs oscillations
    at the interval ends.
    """
    if matrix.modified:
        raise ValueError("spectrum_to_fourier requires the plain matrix")
    if matrix.order_max + 1 < len(spec):
        raise DimensionMismatch(
            f"matrix has {matrix.order_max + 1} rows, spectrum has {len(spec)}")
    entries = matrix.entries[: len(spec)]
    coeffs = np.conj(entries.T) @ spec.coeffs.astype(entries.real.dtype)
    return FourierSpectrum(coeffs, matrix.duration)


def fourier_to_signal(spectrum: FourierSpectrum, num_samples: int) -> SampledSignal:
    """One-sided synthesis v_i = (1/T)[f~_0 + 2 Re sum_j f~_j e^{I k_j t_i}]."""
    n = num_samples
    nf = len(spectrum.coeffs) - 1
    if nf > n // 2:
        raise DimensionMismatch(
            f"{nf + 1} Fourier coefficients cannot synthesize {n} samples")
    full = np.zeros(n // 2 + 1, dtype=np.complex128)
    full[: nf + 1] = spectrum.coeffs
    if n % 2 == 0 and nf == n // 2:
        full[nf] *= 2.0  # keep the uniform factor-2 one-sided weighting
    values = np.fft.irfft(full, n) * (n / spectrum.duration)
    return SampledSignal(values, spectrum.duration / n)


def relative_error(reference, approx) -> float:
    """epsilon = sqrt(sum (f_i - v_i)^2 / sum f_i^2) on a shared grid."""
    ref = reference.values if isinstance(reference, SampledSignal) else np.asarray(reference)
    app = approx.values if isinstance(approx, SampledSignal) else np.asarray(approx)
    if ref.shape != app.shape:
        raise DimensionMismatch(f"grid mismatch: {ref.shape} vs {app.shape}")
    denom = float(np.dot(ref, ref))
    if denom == 0.0:
        raise ZeroDivisionError("reference signal is identically zero")
    diff = ref - app
    return float(np.sqrt(np.dot(diff, diff) / denom))

"""Laguerre expansion coefficients via the transport-equation spectral method.

The signal's one-sided DFT is multiplied per wavenumber by
base = sqrt(eta)/(eta/2 - I k) and the unimodular ratio
(-eta/2 - I k)/(eta/2 - I k); powers of the ratio are generated by the
m-recursion, never by complex powers.  Synthesizing the per-wavenumber
values at the interval origin yields the coefficients of the T-periodized
signal; subtracting the T-shifted spectrum from itself then removes every
fictitious period exactly (the shift is triangular in m, so the subtraction
is immune to the series-truncation artifacts that afflict the double
conjugation on non-decaying sequences).

Coefficients follow the orthonormal convention: basis sqrt(eta) l_m(eta t),
a_m = integral of f against the basis, f = sum a_m basis_m.
"""

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, MemoryGuardError
from .laguerre import cached_table
from .operators import conjugate_coefficients, shift_coefficients
from .signals import FourierSpectrum, LaguerreSpectrum, SampledSignal, TransformMatrix
from .truncation import TruncationReport, energy_truncate

__all__ = [
    "taper_signal",
    "forward_dft",
    "spectral_multiplier",
    "coefficients_via_transport",
    "remove_periodicity",
    "build_transform_matrix",
    "apply_transform_matrix",
    "algorithm1",
    "algorithm2",
    "algorithm3",
]

_F32_BLOCK = 8  # complex64 recursion restart interval (drift < 5e-7 criterion)


def taper_signal(signal: SampledSignal, width_fraction: float = 0.05) -> SampledSignal:
    """Multiply the last width_fraction of the interval by a raised-cosine
    decay so the signal meets the right boundary at exactly zero."""
    if width_fraction <= 0:
        return signal
    n = len(signal.values)
    w = max(2, int(round(width_fraction * n)))
    window = np.ones(n)
    ramp = np.cos(0.5 * np.pi * (np.arange(w) + 1.0) / w) ** 2
    ramp[-1] = 0.0  # raised cosine chosen for the exactly-zero endpoint
    window[n - w:] = ramp
    return SampledSignal(signal.values * window, signal.step)


def forward_dft(signal: SampledSignal, n_freq: int | None = None) -> FourierSpectrum:
    """One-sided Riemann DFT: f~_j = h_t sum_i f_i exp(-2 pi I i j / N)."""
    n = len(signal.values)
    if n_freq is None:
        n_freq = n // 2
    if not 0 <= n_freq <= n // 2:
        raise ValueError(f"n_freq must lie in [0, {n // 2}], got {n_freq}")
    coeffs = signal.step * np.fft.rfft(signal.values)[: n_freq + 1]
    return FourierSpectrum(coeffs, signal.duration)


def spectral_multiplier(eta, k):
    """Per-wavenumber factors (base, ratio) with V_m(k) = base ratio^m f~(k).

    |ratio| = 1 identically, which is what keeps the m-recursion free of
    overflow and underflow for any order and interval.  eta and k may be
    scalars or broadcastable arrays.
    """
    eta = np.asarray(eta, dtype=np.float64)
    if np.any(eta <= 0):
        raise ValueError("eta must be positive")
    kk = np.asarray(k, dtype=np.float64)
    den = 0.5 * eta - 1j * kk
    base = np.sqrt(eta) / den
    ratio = (-0.5 * eta - 1j * kk) / den
    if base.ndim == 0:
        return complex(base), complex(ratio)
    return base, ratio


def _weighted_multipliers(spectrum: FourierSpectrum, eta: float, eval_offset: float):
    """c0_j = (w_j / T) base_j f~_j e^{+I k_j offset} and the ratio array."""
    k = spectrum.wavenumbers
    base, ratio = spectral_multiplier(eta, k)
    w = np.full(len(k), 2.0)
    w[0] = 1.0
    c0 = (w / spectrum.duration) * base * spectrum.coeffs
    if eval_offset != 0.0:
        c0 = c0 * np.exp(1j * k * eval_offset)
    return c0, ratio


def coefficients_via_transport(spectrum: FourierSpectrum, eta: float, n: int,
                               eval_offset: float = 0.0,
                               precision: str = "f64") -> LaguerreSpectrum:
    """Coefficients of the T-periodized signal, a_m = v_m(eval_offset).

    A positive eval_offset advances the represented function by that amount
    (used to drop a leading auxiliary ramp interval).  The result carries
    the fictitious T-periodicity; see remove_periodicity.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= eval_offset < spectrum.duration:
        raise ValueError(
            f"eval_offset must lie in [0, duration), got {eval_offset}")
    if precision == "f32":
        quant = FourierSpectrum(
            spectrum.coeffs.astype(np.complex64).astype(np.complex128),
            spectrum.duration)
        c0, ratio = _weighted_multipliers(quant, eta, eval_offset)
        a = _kernels.transport_synthesis_f32(
            c0, np.angle(ratio), ratio.astype(np.complex64), n, _F32_BLOCK)
    elif precision == "f64":
        c0, ratio = _weighted_multipliers(spectrum, eta, eval_offset)
        a = _kernels.transport_synthesis_f64(c0, ratio, n)
    else:
        raise ValueError(f"precision must be f32|f64, got {precision!r}")
    return LaguerreSpectrum(a, eta, spectrum.duration)


def remove_periodicity(spec: LaguerreSpectrum) -> LaguerreSpectrum:
    """Window the represented function to [0, duration): a - S{a; T}.

    On transport output the reconstruction is exactly T-periodic, so the
    T-delayed spectrum reproduces everything beyond T and the difference
    leaves the single genuine period.  Exact at any length budget.
    """
    table = cached_table(len(spec) - 1, spec.eta * spec.duration)
    if spec.coeffs.dtype == np.float32:
        table = table.astype(np.float32)
    clean = spec.coeffs - shift_coefficients(spec.coeffs, table, len(spec))
    return LaguerreSpectrum(clean, spec.eta, spec.duration)


def _window_columns(entries: np.ndarray, eta: float, duration: float,
                    ramp_width: float) -> np.ndarray:
    """Apply the periodicity window (and optional ramp removal) per column."""
    n_rows = entries.shape[0]
    tab = cached_table(2 * n_rows, eta * duration)
    out = np.empty_like(entries)
    for j in range(entries.shape[1]):
        col = entries[:, j]
        out[:, j] = col - shift_coefficients(col, tab, n_rows)
    if ramp_width > 0.0:
        inner = duration - ramp_width
        tab_in = cached_table(2 * n_rows, eta * inner)
        for j in range(entries.shape[1]):
            h = conjugate_coefficients(out[:, j], tab, n_rows)
            out[:, j] = conjugate_coefficients(h, tab_in, n_rows)
    return out


def build_transform_matrix(eta: float, n: int, n_freq: int, duration: float,
                           modified: bool = False, ramp_width: float = 0.0,
                           precision: str = "f64",
                           max_entries: int = 2 ** 31) -> TransformMatrix:
    """Matrix of base_j ratio_j^m entries (rows m, columns j).

    Plain entries are built from exact per-column magnitudes and recursed
    phases, so |entry(m, j)| is constant in m to a couple of ulps.  With
    modified=True each column is windowed to [0, duration), which is the
    batch-friendly form: spectrum = Re((w/T) M f~) for any trace on the
    same grid.  Always built in f64; cast down when precision is f32.
    """
    if eta <= 0 or duration <= 0 or n < 0 or n_freq < 0:
        raise ValueError("eta, duration must be positive; n, n_freq nonnegative")
    if (n + 1) * (n_freq + 1) > max_entries:
        raise MemoryGuardError(
            f"matrix would hold {(n + 1) * (n_freq + 1)} entries "
            f"(> {max_entries}); use the segmented transform")
    k = np.arange(n_freq + 1) * (2.0 * np.pi / duration)
    base, ratio = spectral_multiplier(eta, k)
    r0 = np.sqrt(eta) / np.hypot(0.5 * eta, k)
    entries = _kernels.matrix_phases(r0, np.angle(base), np.angle(ratio), n)
    if modified:
        entries = _window_columns(entries, eta, duration, ramp_width)
    if precision == "f32":
        entries = entries.astype(np.complex64)
    return TransformMatrix(entries, eta, duration, modified, ramp_width)


def apply_transform_matrix(matrix: TransformMatrix,
                           spectrum: FourierSpectrum) -> LaguerreSpectrum:
    """a = Re((w/T) entries @ f~) with w = (1, 2, 2, ...)."""
    if len(spectrum.coeffs) != matrix.n_freq + 1:
        raise DimensionMismatch(
            f"matrix has {matrix.n_freq + 1} columns, spectrum has "
            f"{len(spectrum.coeffs)} coefficients")
    if not np.isclose(spectrum.duration, matrix.duration, rtol=1e-9, atol=0.0):
        raise DimensionMismatch(
            f"matrix duration {matrix.duration} != signal duration "
            f"{spectrum.duration}")
    w = np.full(matrix.n_freq + 1, 2.0)
    w[0] = 1.0
    f = (w / matrix.duration) * spectrum.coeffs
    if matrix.entries.dtype == np.complex64:
        a = (matrix.entries @ f.astype(np.complex64)).real
    else:
        a = (matrix.entries @ f).real
    out_duration = matrix.duration - matrix.ramp_width
    return LaguerreSpectrum(a, matrix.eta, out_duration)


def algorithm1(signal: SampledSignal, eta: float, n: int,
               extension_factor: int = 3, n_freq: int | None = None,
               eval_offset: float = 0.0, taper_width: float = 0.05,
               truncation: str = "energy",
               precision: str = "f64") -> tuple[LaguerreSpectrum, TruncationReport | None]:
    """Interval-extension transform: zero-pad to extension_factor * T so the
    fictitious periods separate in the spectral domain, then (optionally)
    cut the spectrum where its cumulative energy matches the signal's.

    Returns (spectrum, report); report is None with truncation="none".
    """
    if extension_factor < 1:
        raise ValueError("extension_factor must be >= 1")
    if truncation not in ("energy", "none"):
        raise ValueError(f"truncation must be energy|none, got {truncation!r}")
    tapered = taper_signal(signal, taper_width)
    values = tapered.values
    if extension_factor > 1:
        values = np.concatenate(
            [values, np.zeros((extension_factor - 1) * len(values))])
    extended = SampledSignal(values, signal.step)
    ft = forward_dft(extended, n_freq)
    spec = coefficients_via_transport(ft, eta, n, eval_offset, precision)
    if truncation == "none":
        return spec, None
    return energy_truncate(spec, tapered)


def algorithm2(signal: SampledSignal, matrix: TransformMatrix,
               taper_width: float = 0.05) -> LaguerreSpectrum:
    """Matrix-form transform for batches of traces on a fixed grid."""
    if not matrix.modified:
        raise ValueError("algorithm2 requires a modified (windowed) matrix")
    tapered = taper_signal(signal, taper_width)
    if not np.isclose(tapered.duration, matrix.duration, rtol=1e-9, atol=0.0):
        raise DimensionMismatch(
            f"matrix duration {matrix.duration} != signal duration "
            f"{tapered.duration}")
    ft = forward_dft(tapered, matrix.n_freq)
    if matrix.entries.dtype == np.complex64:
        ft = FourierSpectrum(ft.coeffs.astype(np.complex64), ft.duration)
    return apply_transform_matrix(matrix, ft)


def algorithm3(signal: SampledSignal, eta: float, n: int,
               n_freq: int | None = None, ramp_width: float = 0.0,
               taper_width: float = 0.05,
               precision: str = "f64") -> LaguerreSpectrum:
    """Single-trace transform: plain transport synthesis followed by the
    periodicity window (and ramp removal when the signal carries one)."""
    tapered = taper_signal(signal, taper_width)
    ft = forward_dft(tapered, n_freq)
    spec = coefficients_via_transport(ft, eta, n, 0.0, precision)
    clean = remove_periodicity(spec)
    if ramp_width > 0.0:
        duration = signal.duration
        inner = duration - ramp_width
        tab_outer = cached_table(2 * len(clean), eta * duration)
        tab_inner = cached_table(2 * len(clean), eta * inner)
        if clean.coeffs.dtype == np.float32:
            tab_outer = tab_outer.astype(np.float32)
            tab_inner = tab_inner.astype(np.float32)
        h = conjugate_coefficients(clean.coeffs, tab_outer, len(clean))
        c = conjugate_coefficients(h, tab_inner, len(clean))
        return LaguerreSpectrum(c, eta, inner)
    return clean

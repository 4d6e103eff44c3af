"""FFT-accelerated operators on Laguerre coefficient sequences.

``shift`` delays the represented function by tau, ``conjugate`` reverses it
about tau, and applying ``conjugate`` twice windows the function to [0, tau]
(Heaviside truncation).  Both reduce to a linear convolution/correlation of
the differenced sequence with the table l_j(eta*tau) and cost O(n log n).

The calibration prefactor is 1 under the orthonormal basis convention used
throughout this package: with all tables at tau = 0 equal to one, the shift
telescopes to the identity.
"""

import numpy as np
import scipy.fft as sfft

from .errors import EmptySpectrumError
from .laguerre import cached_table
from .signals import LaguerreSpectrum

__all__ = ["shift", "conjugate", "truncate_after", "zero_pad",
           "shift_coefficients", "conjugate_coefficients"]


def _diff(arr: np.ndarray) -> np.ndarray:
    """a_m - a_{m-1} with a_{-1} = 0."""
    d = np.empty_like(arr)
    d[0] = arr[0]
    d[1:] = arr[1:] - arr[:-1]
    return d


def _as_working(arr: np.ndarray):
    """Promote to the complex type matching the array's precision class."""
    if arr.dtype in (np.float32, np.complex64):
        return np.complex64, arr.dtype == np.complex64 or np.iscomplexobj(arr)
    return np.complex128, np.iscomplexobj(arr)


def shift_coefficients(arr: np.ndarray, table: np.ndarray, out_len: int) -> np.ndarray:
    """b_m = sum_{j<=m} (a_{m-j} - a_{m-j-1}) l_j, m = 0..out_len-1.

    Triangular in m: the result is exact at any length budget.  ``table``
    must supply at least out_len values.
    """
    ctype, iscomplex = _as_working(arr)
    d = _diff(arr).astype(ctype)
    tab = table[:out_len].astype(ctype)
    nfft = sfft.next_fast_len(len(d) + out_len)
    b = sfft.ifft(sfft.fft(d, nfft) * sfft.fft(tab, nfft))[:out_len]
    return b if iscomplex else b.real.copy()


def conjugate_coefficients(arr: np.ndarray, table: np.ndarray, out_len: int) -> np.ndarray:
    """b_j = sum_m (a_m - a_{m-1}) l_{m+j}, j = 0..out_len-1.

    The sum over m is truncated at the input length; ``table`` must supply
    len(arr) + out_len - 1 values.
    """
    ctype, iscomplex = _as_working(arr)
    d = _diff(arr).astype(ctype)
    need = len(arr) + out_len - 1
    tab = table[:need].astype(ctype)
    nfft = sfft.next_fast_len(need + len(d))
    # correlation as convolution with the reversed difference sequence
    b = sfft.ifft(sfft.fft(tab, nfft) * sfft.fft(d[::-1], nfft))[len(d) - 1:len(d) - 1 + out_len]
    return b if iscomplex else b.real.copy()


def _shift_direct(arr, table, out_len):
    """O(n^2) reference implementation for cross-checks."""
    d = _diff(np.asarray(arr, dtype=np.float64))
    out = np.zeros(out_len)
    for m in range(out_len):
        hi = min(m, len(d) - 1)
        out[m] = np.dot(d[m - hi:m + 1][::-1], table[:hi + 1])
    return out


def _conjugate_direct(arr, table, out_len):
    """O(n^2) reference implementation for cross-checks."""
    d = _diff(np.asarray(arr, dtype=np.float64))
    out = np.zeros(out_len)
    for j in range(out_len):
        out[j] = np.dot(d, table[j:j + len(d)])
    return out


def _table_for(spec: LaguerreSpectrum, tau: float, length: int) -> np.ndarray:
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    if len(spec) == 0:
        raise EmptySpectrumError("empty coefficient sequence")
    return cached_table(length - 1, spec.eta * tau)


def shift(spec: LaguerreSpectrum, tau: float, output_len: int | None = None) -> LaguerreSpectrum:
    """Coefficients of f(t - tau), with f == 0 for t < 0."""
    out_len = output_len or len(spec)
    table = _table_for(spec, tau, out_len)
    if spec.coeffs.dtype == np.float32:
        table = table.astype(np.float32)
    b = shift_coefficients(spec.coeffs, table, out_len)
    return LaguerreSpectrum(b, spec.eta, spec.duration)


def conjugate(spec: LaguerreSpectrum, tau: float, output_len: int | None = None) -> LaguerreSpectrum:
    """Coefficients approximating f(tau - t), with f == 0 for t < 0."""
    out_len = output_len or len(spec)
    table = _table_for(spec, tau, len(spec) + out_len - 1)
    if spec.coeffs.dtype == np.float32:
        table = table.astype(np.float32)
    b = conjugate_coefficients(spec.coeffs, table, out_len)
    return LaguerreSpectrum(b, spec.eta, spec.duration)


def truncate_after(spec: LaguerreSpectrum, tau: float,
                   inner_tau: float | None = None) -> LaguerreSpectrum:
    """Double conjugation: window the represented function to [0, tau'].

    With inner_tau = None this is the plain Heaviside truncation at tau.
    With inner_tau = tau - ramp it also discards a leading auxiliary
    interval of width tau - inner_tau (ramp removal).

    Meaningful on decaying coefficient sequences; for removing the
    fictitious periodicity of raw transport output see
    transport.remove_periodicity, which is exact on periodized spectra.
    """
    h = conjugate(spec, tau)
    return conjugate(h, tau if inner_tau is None else inner_tau)


def zero_pad(spec: LaguerreSpectrum, new_len: int) -> LaguerreSpectrum:
    """Extend with exact zeros; metadata preserved."""
    if new_len < len(spec):
        raise ValueError(f"new_len {new_len} < current length {len(spec)}")
    if new_len == len(spec):
        return spec
    c = np.zeros(new_len, dtype=spec.coeffs.dtype)
    c[:len(spec)] = spec.coeffs
    return LaguerreSpectrum(c, spec.eta, spec.duration)

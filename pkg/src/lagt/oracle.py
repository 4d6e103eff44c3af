"""Brute-force reference: left-rectangle quadrature of the coefficient
integral a_m = integral f(t) sqrt(eta) l_m(eta t) dt.

First-order accurate by construction; it exists to cross-check the
transport method, not to compete with it.  Intended for desk scales
(n up to a few hundred, eta * duration within the evaluation guard).
"""

import warnings

import numpy as np

from . import _kernels
from .errors import GuardExceeded, ResolutionWarning
from .laguerre import GUARD_ARGUMENT
from .signals import LaguerreSpectrum, SampledSignal

__all__ = ["rectangle_coefficients", "resolution_bound"]

_CHUNK = 200_000


def resolution_bound(eta: float, n: int, duration: float) -> float:
    """Step giving ~20 samples per mean basis oscillation at order n.

    l_n(eta t) has about (2/pi) sqrt(n eta T) zeros on [0, T]; one
    oscillation spans two zero gaps.
    """
    return (np.pi / 20.0) * np.sqrt(duration / (n * eta))


def rectangle_coefficients(f, eta: float, n: int, fine_step: float | None = None,
                           duration: float | None = None) -> LaguerreSpectrum:
    """a_m = fine_step * sum_i f(t_i) sqrt(eta) l_m(eta t_i), t_i = i*fine_step.

    ``f`` is either a callable (then ``fine_step`` and ``duration`` are
    required) or an already finely sampled SampledSignal (its own step is
    used).  Emits ResolutionWarning when the step cannot resolve the
    order-n oscillations.
    """
    if isinstance(f, SampledSignal):
        values, fine_step, duration = f.values, f.step, f.duration
        sampler = None
    else:
        if fine_step is None or duration is None:
            raise ValueError("callable input requires fine_step and duration")
        values, sampler = None, f
    if eta <= 0 or n < 0 or fine_step <= 0 or duration <= 0:
        raise ValueError("eta, fine_step, duration must be positive; n >= 0")
    if eta * duration > GUARD_ARGUMENT:
        raise GuardExceeded(
            f"eta*duration = {eta * duration} exceeds the evaluation guard; "
            "the rectangle oracle only covers desk scales")
    bound = resolution_bound(eta, n, duration)
    if fine_step > bound:
        warnings.warn(
            f"fine_step {fine_step:g} exceeds the oscillation-resolution "
            f"bound {bound:g} for order {n}", ResolutionWarning, stacklevel=2)
    npts = int(round(duration / fine_step))
    acc = np.zeros(n + 1)
    for start in range(0, npts, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, npts))
        t = idx * fine_step
        fv = values[idx] if sampler is None else np.asarray(sampler(t), dtype=np.float64)
        acc += _kernels.laguerre_block(n, eta * t) @ fv
    coeffs = np.sqrt(eta) * fine_step * acc
    return LaguerreSpectrum(coeffs, eta, duration)

"""Synthetic test signals used by the benchmarks and the acceptance suite."""

import numpy as np

from .signals import SampledSignal

__all__ = ["source_wavelet", "source_signal", "ramped_signal", "bursts_signal"]


def source_wavelet(t, f0: float = 30.0, g: float = 4.0, t0: float = 0.5):
    """Gaussian-windowed sine, the smooth benchmark pulse."""
    u = 2.0 * np.pi * f0 * (np.asarray(t, dtype=np.float64) - t0)
    return np.exp(-(u * u) / (g * g)) * np.sin(u)


def source_signal(step: float = 0.002, duration: float = 1.0, f0: float = 30.0,
                  g: float = 4.0, t0: float = 0.5) -> SampledSignal:
    t = np.arange(int(round(duration / step))) * step
    return SampledSignal(source_wavelet(t, f0, g, t0), step)


def ramped_wavelet(t, f0: float = 12.0, decay: float = 10.0):
    t = np.asarray(t, dtype=np.float64)
    return np.cos(2.0 * np.pi * f0 * t) * np.exp(-decay * t)


def ramped_signal(step: float = 0.002, duration: float = 1.0, f0: float = 12.0,
                  decay: float = 10.0) -> SampledSignal:
    """Decaying cosine with f(0) = 1: exercises the nonzero-origin handling.

    The decay leaves ~5e-5 at the right boundary so only the left end is
    problematic for the periodized transform.
    """
    t = np.arange(int(round(duration / step))) * step
    return SampledSignal(ramped_wavelet(t, f0, decay), step)


def bursts_signal(step: float | None = None, duration: float = 12.0,
                  n_bursts: int = 24, seed: int = 42,
                  clip_level: float = 0.55,
                  n_samples: int | None = None) -> SampledSignal:
    """Nonsmooth stand-in for a seismic trace: randomly placed windowed
    wavelets with amplitudes clipped to a fraction of the peak.

    Deterministic for a given seed.  Bursts stay inside [0.06 T, 0.85 T]
    so both interval ends are quiet.
    """
    if n_samples is None:
        n_samples = 6144 if step is None else int(round(duration / step))
    step = duration / n_samples
    t = np.arange(n_samples) * step
    rng = np.random.default_rng(seed)
    f = np.zeros(n_samples)
    for _ in range(n_bursts):
        center = rng.uniform(0.06 * duration, 0.85 * duration)
        freq = rng.uniform(2.0, 7.0)
        width = rng.uniform(0.08, 0.30)
        amp = rng.uniform(0.4, 1.3)
        f += amp * np.exp(-((t - center) / width) ** 2) \
            * np.sin(2.0 * np.pi * freq * (t - center))
    lim = clip_level * np.abs(f).max()
    return SampledSignal(np.clip(f, -lim, lim), step)

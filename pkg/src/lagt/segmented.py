"""Divide-and-conquer transform over long intervals.

The interval splits into p = 2^s overlapping segments with raised-cosine
crossfades forming an exact partition of unity, each segment is transformed
on its own short interval, and a binary tree of zero-pad + shift + add
rounds reassembles the global spectrum.  Stage-1 work scales as n N_x / p;
stage 2 adds log2(p) shift rounds of O(n log n) each.
"""

import time

import numpy as np

from dataclasses import dataclass

from .laguerre import cached_table
from .errors import DimensionMismatch
from .operators import shift_coefficients
from .signals import LaguerreSpectrum, SampledSignal
from .transport import algorithm2, algorithm3, build_transform_matrix

__all__ = ["SegmentPlan", "SegmentTimings", "partition", "transform_segments",
           "assemble", "segmented_transform"]


@dataclass(frozen=True)
class SegmentPlan:
    p: int
    sample_bounds: tuple
    step: float
    buffer_width: float
    local_n: int

    @property
    def bounds(self) -> list:
        """Segment intervals (alpha_i, beta_i) in time units."""
        return [(lo * self.step, hi * self.step) for lo, hi in self.sample_bounds]


@dataclass
class SegmentTimings:
    prep: float = 0.0
    stage1: float = 0.0
    stage2: float = 0.0

    @property
    def total(self) -> float:
        return self.prep + self.stage1 + self.stage2

    def to_dict(self) -> dict:
        return {"prep": self.prep, "step1": self.stage1,
                "step2": self.stage2, "total": self.total}


def partition(signal: SampledSignal, p: int,
              buffer_width: float | None = None,
              local_n: int = 0) -> tuple[SegmentPlan, list[SampledSignal]]:
    """Split into p = 2^s overlapping tapered segments.

    Crossfade weights at each interior edge are built as c and 1 - c of the
    same cosine profile, so the placed segments sum back to the signal
    exactly (to the last ulp).
    """
    if p < 1 or (p & (p - 1)) != 0:
        raise ValueError(f"segment count must be a power of two, got {p}")
    n_samples = len(signal.values)
    if buffer_width is None:
        buffer_width = 0.10 * signal.duration / p
    bw = int(round(buffer_width / signal.step))
    seg_len = n_samples // p
    if p > 1 and not 0 < bw < seg_len // 2:
        raise ValueError(
            f"buffer width {buffer_width} unusable for segments of "
            f"{seg_len * signal.step}")
    edges = [round(i * n_samples / p) for i in range(p + 1)]
    weights = []
    for i in range(p):
        w = np.zeros(n_samples)
        w[edges[i]:edges[i + 1]] = 1.0
        weights.append(w)
    for e in range(1, p):
        lo = edges[e] - bw // 2
        rising = np.sin(0.5 * np.pi * (np.arange(bw) + 0.5) / bw) ** 2
        weights[e - 1][lo:lo + bw] = 1.0 - rising
        weights[e][lo:lo + bw] = rising
    bounds, locals_ = [], []
    for i in range(p):
        nz = np.nonzero(weights[i])[0]
        lo, hi = int(nz[0]), int(nz[-1]) + 1
        bounds.append((lo, hi))
        locals_.append(SampledSignal((signal.values * weights[i])[lo:hi], signal.step))
    plan = SegmentPlan(p, tuple(bounds), signal.step, bw * signal.step, local_n)
    return plan, locals_


def transform_segments(local_signals: list, eta: float, local_n: int,
                       algorithm: int = 3, precision: str = "f64",
                       timings: SegmentTimings | None = None) -> list:
    """Transform each local signal on its own [0, dt_i] interval.

    The crossfades already take every segment smoothly to zero, so no
    additional edge taper is applied here (it would break the partition of
    unity).  With algorithm=2 the per-length matrices count as preparation
    time.
    """
    if algorithm not in (2, 3):
        raise ValueError("local transforms use algorithm 2 or 3")
    spectra = []
    if algorithm == 2:
        matrices = {}
        t0 = time.perf_counter()
        for s in local_signals:
            key = len(s.values)
            if key not in matrices:
                matrices[key] = build_transform_matrix(
                    eta, local_n, key // 2, s.duration,
                    modified=True, precision=precision)
        if timings is not None:
            timings.prep += time.perf_counter() - t0
        t0 = time.perf_counter()
        for s in local_signals:
            spectra.append(algorithm2(s, matrices[len(s.values)], taper_width=0.0))
        if timings is not None:
            timings.stage1 += time.perf_counter() - t0
    else:
        t0 = time.perf_counter()
        for s in local_signals:
            spectra.append(algorithm3(s, eta, local_n, taper_width=0.0,
                                      precision=precision))
        if timings is not None:
            timings.stage1 += time.perf_counter() - t0
    return spectra


def assemble(spectra: list, plan: SegmentPlan,
             timings: SegmentTimings | None = None) -> LaguerreSpectrum:
    """log2(p) rounds of zero-pad to double length, shift the right member
    of each pair by its offset from the left member, and add."""
    if len(spectra) != plan.p:
        raise DimensionMismatch(f"expected {plan.p} spectra, got {len(spectra)}")
    t0 = time.perf_counter()
    items = [(plan.sample_bounds[i][0] * plan.step, spectra[i].coeffs)
             for i in range(plan.p)]
    eta = spectra[0].eta
    dtype = spectra[0].coeffs.dtype
    lengths = {len(c) for _, c in items}
    if len(lengths) != 1:
        raise DimensionMismatch(f"inconsistent spectra lengths: {sorted(lengths)}")
    while len(items) > 1:
        merged = []
        for i in range(0, len(items), 2):
            off_l, left = items[i]
            off_r, right = items[i + 1]
            size = 2 * len(left)
            padded_l = np.zeros(size, dtype=dtype)
            padded_l[: len(left)] = left
            padded_r = np.zeros(size, dtype=dtype)
            padded_r[: len(right)] = right
            tau = off_r - off_l
            table = cached_table(size - 1, eta * tau)
            if dtype == np.float32:
                table = table.astype(np.float32)
            merged.append((off_l, padded_l + shift_coefficients(padded_r, table, size)))
        items = merged
    if timings is not None:
        timings.stage2 += time.perf_counter() - t0
    total_duration = plan.sample_bounds[-1][1] * plan.step
    return LaguerreSpectrum(items[0][1], eta, total_duration)


def segmented_transform(signal: SampledSignal, eta: float, n: int, p: int,
                        buffer_width: float | None = None, algorithm: int = 3,
                        precision: str = "f64") -> tuple[LaguerreSpectrum, SegmentTimings]:
    """Algorithm-4 pipeline; returns the global spectrum and stage timings.

    Each segment gets n // p coefficients (override by calling the stages
    yourself for nonsmooth inputs needing more).
    """
    timings = SegmentTimings()
    local_n = n // p
    plan, local_signals = partition(signal, p, buffer_width, local_n)
    spectra = transform_segments(local_signals, eta, local_n, algorithm,
                                 precision, timings)
    out = assemble(spectra, plan, timings)
    if len(out) > n + 1:
        out = LaguerreSpectrum(out.coeffs[: n + 1], out.eta, out.duration)
    return out, timings

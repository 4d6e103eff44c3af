"""Integral Laguerre transforms of sampled signals via a spectral
transport-equation method: forward/inverse transforms, spectrum-domain
shift and conjugation operators, stable high-order Laguerre function
evaluation, and a divide-and-conquer transform for long intervals."""

from ._kernels import ACTIVE_BACKEND
from .errors import (DimensionMismatch, EmptySpectrumError, GuardExceeded,
                     MemoryGuardError, ResolutionWarning)
from .laguerre import (GUARD_ARGUMENT, LaguerreFunctionTable, ShiftSchedule,
                       asymptotic_value, eval_shift_doubling,
                       eval_split_recurrence, laguerre_function_values,
                       schedule_for)
from .operators import conjugate, shift, truncate_after, zero_pad
from .oracle import rectangle_coefficients, resolution_bound
from .reconstruct import (fourier_to_signal, reconstruct, reconstruct_signal,
                          relative_error, spectrum_to_fourier)
from .segmented import (SegmentPlan, SegmentTimings, assemble, partition,
                        segmented_transform, transform_segments)
from .signals import (FourierSpectrum, LaguerreSpectrum, SampledSignal,
                      TransformMatrix)
from .transport import (algorithm1, algorithm2, algorithm3,
                        apply_transform_matrix, build_transform_matrix,
                        coefficients_via_transport, forward_dft,
                        remove_periodicity, spectral_multiplier, taper_signal)
from .truncation import TruncationReport, energy_truncate

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND", "GUARD_ARGUMENT", "__version__",
    "DimensionMismatch", "EmptySpectrumError", "GuardExceeded",
    "MemoryGuardError", "ResolutionWarning",
    "LaguerreFunctionTable", "ShiftSchedule", "asymptotic_value",
    "eval_shift_doubling", "eval_split_recurrence",
    "laguerre_function_values", "schedule_for",
    "conjugate", "shift", "truncate_after", "zero_pad",
    "rectangle_coefficients", "resolution_bound",
    "fourier_to_signal", "reconstruct", "reconstruct_signal",
    "relative_error", "spectrum_to_fourier",
    "SegmentPlan", "SegmentTimings", "assemble", "partition",
    "segmented_transform", "transform_segments",
    "FourierSpectrum", "LaguerreSpectrum", "SampledSignal", "TransformMatrix",
    "algorithm1", "algorithm2", "algorithm3", "apply_transform_matrix",
    "build_transform_matrix", "coefficients_via_transport", "forward_dft",
    "remove_periodicity", "spectral_multiplier", "taper_signal",
    "TruncationReport", "energy_truncate",
]

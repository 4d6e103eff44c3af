"""Stable evaluation of Laguerre functions l_n(x) = e^{-x/2} L_n(x).

Two paths cover the whole (order, argument) range:

* split-exponential recurrence for x <= GUARD_ARGUMENT, which keeps every
  intermediate of the three-term recurrence representable in float64 by
  distributing e^{-x/2} as two e^{-x/4} factors;
* recurrent shift doubling for larger arguments: the table at argument x
  is convolved with itself to produce the table at 2x, repeatedly.  Each
  doubling is an O(n log n) FFT convolution and never overflows because
  every value is bounded by 1.
"""

import math
import threading

import numpy as np
import scipy.fft as sfft

from dataclasses import dataclass

from . import _kernels
from .errors import GuardExceeded

__all__ = [
    "GUARD_ARGUMENT",
    "LaguerreFunctionTable",
    "ShiftSchedule",
    "eval_split_recurrence",
    "eval_shift_doubling",
    "schedule_for",
    "laguerre_function_values",
    "cached_table",
    "asymptotic_value",
]

# exp(-x/4) stays a normal float64 for x <= 4*|ln(2.225e-308)| ~ 2833;
# 2600 leaves headroom for the recurrence intermediates.
GUARD_ARGUMENT = 2600.0


@dataclass(frozen=True)
class LaguerreFunctionTable:
    """Values l_0(x)..l_{order_max}(x) at a fixed dimensionless argument."""

    order_max: int
    argument: float
    values: np.ndarray


@dataclass(frozen=True)
class ShiftSchedule:
    """Doubling plan reaching argument eta * base_step * 2**doublings."""

    base_step: float
    doublings: int
    eta: float = 1.0

    @property
    def target_argument(self) -> float:
        return self.eta * self.base_step * 2.0 ** self.doublings


def eval_split_recurrence(order_max: int, x: float,
                          guard: float = GUARD_ARGUMENT) -> LaguerreFunctionTable:
    """Evaluate l_m(x) for m = 0..order_max by the split recurrence.

    Raises GuardExceeded for x > guard: e^{-x/4} would leave the normal
    float64 range and the caller must use shift doubling instead.
    """
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if order_max < 0:
        raise ValueError(f"order_max must be nonnegative, got {order_max}")
    if x > guard:
        raise GuardExceeded(
            f"argument {x} exceeds the split-recurrence guard {guard}; "
            "use eval_shift_doubling")
    values = _kernels.laguerre_table(int(order_max), float(x))
    return LaguerreFunctionTable(order_max, x, values)


def _double_once(values: np.ndarray) -> np.ndarray:
    """Table at argument x -> table at 2x: b_m = sum_j (a_{m-j}-a_{m-j-1}) a_j.

    The convolution is triangular, so keeping every intermediate table at
    the final length makes each doubling exact for all retained orders.
    """
    n = len(values)
    d = np.empty_like(values)
    d[0] = values[0]
    d[1:] = values[1:] - values[:-1]
    nfft = sfft.next_fast_len(2 * n)
    # scipy.fft preserves single precision, so this path serves f32 and f64
    return sfft.irfft(sfft.rfft(d, nfft) * sfft.rfft(values, nfft), nfft)[:n]


def eval_shift_doubling(order_max: int, schedule: ShiftSchedule,
                        guard: float = GUARD_ARGUMENT,
                        precision: str = "f64") -> LaguerreFunctionTable:
    """Evaluate l_m at schedule.target_argument via recurrent doubling.

    The seed table at eta*base_step always comes from the split recurrence
    (computed in f64; cast down first when precision == "f32" so that the
    doublings themselves run in single precision).
    """
    if schedule.eta <= 0:
        raise ValueError("eta must be positive")
    if schedule.base_step < 0 or (schedule.base_step <= 0 and schedule.doublings > 0):
        raise ValueError("base_step must be positive when doublings > 0")
    if schedule.doublings < 0:
        raise ValueError("doublings must be nonnegative")
    x0 = schedule.eta * schedule.base_step
    seed = eval_split_recurrence(order_max, x0, guard=guard)
    values = seed.values
    if precision == "f32":
        values = values.astype(np.float32)
    for _ in range(schedule.doublings):
        values = _double_once(values)
    return LaguerreFunctionTable(order_max, schedule.target_argument, values)


def schedule_for(x: float, guard: float = GUARD_ARGUMENT) -> ShiftSchedule:
    """Smallest-doubling schedule with a seed argument within the guard."""
    if x <= guard:
        return ShiftSchedule(base_step=x, doublings=0)
    p = max(1, math.ceil(math.log2(x / guard)))
    return ShiftSchedule(base_step=x / 2.0 ** p, doublings=p)


def laguerre_function_values(order_max: int, x: float,
                             guard: float = GUARD_ARGUMENT,
                             precision: str = "f64",
                             allow_doubling: bool = True) -> np.ndarray:
    """l_0(x)..l_{order_max}(x) choosing the evaluation path automatically."""
    if x <= guard:
        values = eval_split_recurrence(order_max, x, guard=guard).values
        return values.astype(np.float32) if precision == "f32" else values
    if not allow_doubling:
        raise GuardExceeded(
            f"argument {x} exceeds guard {guard} and shift doubling is disabled")
    return eval_shift_doubling(order_max, schedule_for(x, guard),
                               guard=guard, precision=precision).values


_table_cache: dict[float, np.ndarray] = {}
_table_lock = threading.Lock()


def cached_table(order_max: int, x: float) -> np.ndarray:
    """Process-wide cache of f64 tables, keyed by argument.

    Stores the longest table computed for each argument; slices are views.
    """
    with _table_lock:
        hit = _table_cache.get(x)
    if hit is not None and len(hit) > order_max:
        return hit[: order_max + 1]
    values = laguerre_function_values(order_max, x)
    with _table_lock:
        prev = _table_cache.get(x)
        if prev is None or len(prev) <= order_max:
            _table_cache[x] = values
    return values


def asymptotic_value(n: int, x: float) -> float:
    """Leading asymptotic term cos(2 sqrt(nx) - pi/4) / (pi^{1/2} (nx)^{1/4}).

    Sanity cross-check only; the remainder is O(n^{-3/4}) for x in a
    compact interval away from zero.
    """
    if x <= 0:
        raise ValueError(f"argument must be positive, got {x}")
    nx = n * x
    return math.cos(2.0 * math.sqrt(nx) - math.pi / 4.0) / (math.pi ** 0.5 * nx ** 0.25)

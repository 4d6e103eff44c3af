"""Hot numeric kernels with numba and pure-numpy implementations.

The backend is chosen once at import time from the ``LAGT_BACKEND``
environment variable: ``numba`` (default when numba imports cleanly),
``numpy`` for the vectorized fallback, or ``auto``.  Both backends expose
the same functions via the ``BACKENDS`` dict so they can be benchmarked
against each other (see benchmarks/backend_bench.py).

All kernels keep strict IEEE semantics (no fastmath): several tests bound
results at the ulp level.
"""

import os

import numpy as np

__all__ = [
    "ACTIVE_BACKEND",
    "BACKENDS",
    "laguerre_table",
    "laguerre_block",
    "laguerre_dot",
    "transport_synthesis_f64",
    "transport_synthesis_f32",
    "matrix_phases",
]


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def _laguerre_table_np(order_max, x):
    """l_m(x) = e^{-x/2} L_m(x) for m = 0..order_max, split-exponential form.

    The recurrence runs on P_m = e^{-x/4} L_m(x); both seeds carry the
    e^{-x/4} factor so every intermediate stays inside the f64 range for
    x <= 2600.
    """
    e = np.exp(-0.25 * x)
    out = np.empty(order_max + 1)
    out[0] = e
    if order_max >= 1:
        out[1] = (1.0 - x) * e
    for n in range(1, order_max):
        out[n + 1] = ((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1)
    return out * e


def _laguerre_block_np(order_max, xs):
    """Table l_m(xs[i]) of shape (order_max+1, len(xs))."""
    xs = np.asarray(xs, dtype=np.float64)
    e = np.exp(-0.25 * xs)
    out = np.empty((order_max + 1, xs.size))
    out[0] = e
    if order_max >= 1:
        out[1] = (1.0 - xs) * e
    for n in range(1, order_max):
        out[n + 1] = ((2 * n + 1 - xs) * out[n] - n * out[n - 1]) / (n + 1)
    out *= e
    return out


def _laguerre_dot_np(coeffs, xs):
    """sum_m coeffs[m] * l_m(xs[i]) without materializing the full table."""
    xs = np.asarray(xs, dtype=np.float64)
    e = np.exp(-0.25 * xs)
    p_prev = e.copy()
    acc = coeffs[0] * p_prev
    if len(coeffs) > 1:
        p_cur = (1.0 - xs) * e
        acc += coeffs[1] * p_cur
        for n in range(1, len(coeffs) - 1):
            p_prev, p_cur = p_cur, ((2 * n + 1 - xs) * p_cur - n * p_prev) / (n + 1)
            acc += coeffs[n + 1] * p_cur
    return acc * e


def _transport_synthesis_f64_np(c0, ratio, n):
    """a_m = sum_j Re(c0_j * ratio_j^m), m = 0..n, by the m-recursion."""
    c = c0.copy()
    a = np.empty(n + 1)
    for m in range(n + 1):
        a[m] = c.real.sum()
        c *= ratio
    return a


def _transport_synthesis_f32_np(c0, theta, ratio32, n, block):
    """Single-precision synthesis: complex64 recursion restarted from
    f64 phases every ``block`` steps, sums accumulated in f64."""
    a = np.empty(n + 1, dtype=np.float32)
    c = None
    for m in range(n + 1):
        if m % block == 0:
            c = (c0 * np.exp(1j * m * theta)).astype(np.complex64)
        a[m] = np.float32(c.real.sum(dtype=np.float64))
        c *= ratio32
    return a


def _matrix_phases_np(r0, phi0, theta, n):
    """Entries r0_j * exp(i (phi0_j + m theta_j)); |entry| constant in m."""
    ms = np.arange(n + 1)[:, None]
    ang = phi0[None, :] + ms * theta[None, :]
    return r0[None, :] * (np.cos(ang) + 1j * np.sin(ang))


_NUMPY_BACKEND = {
    "laguerre_table": _laguerre_table_np,
    "laguerre_block": _laguerre_block_np,
    "laguerre_dot": _laguerre_dot_np,
    "transport_synthesis_f64": _transport_synthesis_f64_np,
    "transport_synthesis_f32": _transport_synthesis_f32_np,
    "matrix_phases": _matrix_phases_np,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _build_numba_backend():
    from numba import njit

    jit = njit(cache=True, nogil=True)

    @jit
    def laguerre_table_nb(order_max, x):
        e = np.exp(-0.25 * x)
        out = np.empty(order_max + 1)
        out[0] = e
        if order_max >= 1:
            out[1] = (1.0 - x) * e
        for n in range(1, order_max):
            out[n + 1] = ((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1)
        for m in range(order_max + 1):
            out[m] *= e
        return out

    @jit
    def laguerre_block_nb(order_max, xs):
        # orders outer, grid inner: the inner loops vectorize
        npts = xs.size
        out = np.empty((order_max + 1, npts))
        e = np.empty(npts)
        for i in range(npts):
            e[i] = np.exp(-0.25 * xs[i])
            out[0, i] = e[i]
        if order_max >= 1:
            for i in range(npts):
                out[1, i] = (1.0 - xs[i]) * e[i]
        for n in range(1, order_max):
            a = 2.0 * n + 1.0
            inv = 1.0 / (n + 1.0)
            for i in range(npts):
                out[n + 1, i] = ((a - xs[i]) * out[n, i] - n * out[n - 1, i]) * inv
        for m in range(order_max + 1):
            for i in range(npts):
                out[m, i] *= e[i]
        return out

    @jit
    def laguerre_dot_nb(coeffs, xs):
        nc = coeffs.shape[0]
        npts = xs.size
        e = np.empty(npts)
        p_prev = np.empty(npts)
        p_cur = np.empty(npts)
        acc = np.empty(npts)
        for i in range(npts):
            e[i] = np.exp(-0.25 * xs[i])
            p_prev[i] = e[i]
            acc[i] = coeffs[0] * e[i]
        if nc > 1:
            c1 = coeffs[1]
            for i in range(npts):
                p_cur[i] = (1.0 - xs[i]) * e[i]
                acc[i] += c1 * p_cur[i]
            for n in range(1, nc - 1):
                a = 2.0 * n + 1.0
                inv = 1.0 / (n + 1.0)
                cn = coeffs[n + 1]
                for i in range(npts):
                    p_next = ((a - xs[i]) * p_cur[i] - n * p_prev[i]) * inv
                    p_prev[i] = p_cur[i]
                    p_cur[i] = p_next
                    acc[i] += cn * p_next
        for i in range(npts):
            acc[i] *= e[i]
        return acc

    @jit
    def transport_synthesis_f64_nb(c0, ratio, n):
        nf = c0.shape[0]
        c = c0.copy()
        a = np.empty(n + 1)
        for m in range(n + 1):
            s = 0.0
            for j in range(nf):
                s += c[j].real
            a[m] = s
            for j in range(nf):
                c[j] *= ratio[j]
        return a

    @jit
    def transport_synthesis_f32_nb(c0, theta, ratio32, n, block):
        nf = c0.shape[0]
        a = np.empty(n + 1, dtype=np.float32)
        c = np.empty(nf, dtype=np.complex64)
        for m in range(n + 1):
            if m % block == 0:
                for j in range(nf):
                    c[j] = np.complex64(c0[j] * np.exp(1j * (m * theta[j])))
            s = 0.0
            for j in range(nf):
                s += np.float64(c[j].real)
            a[m] = np.float32(s)
            for j in range(nf):
                c[j] *= ratio32[j]
        return a

    @jit
    def matrix_phases_nb(r0, phi0, theta, n):
        nf = r0.shape[0]
        out = np.empty((n + 1, nf), dtype=np.complex128)
        for j in range(nf):
            for m in range(n + 1):
                ang = phi0[j] + m * theta[j]
                out[m, j] = r0[j] * complex(np.cos(ang), np.sin(ang))
        return out

    return {
        "laguerre_table": laguerre_table_nb,
        "laguerre_block": laguerre_block_nb,
        "laguerre_dot": laguerre_dot_nb,
        "transport_synthesis_f64": transport_synthesis_f64_nb,
        "transport_synthesis_f32": transport_synthesis_f32_nb,
        "matrix_phases": matrix_phases_nb,
    }


BACKENDS = {"numpy": _NUMPY_BACKEND}

_requested = os.environ.get("LAGT_BACKEND", "auto").lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(f"LAGT_BACKEND must be auto|numba|numpy, got {_requested!r}")

if _requested in ("auto", "numba"):
    try:
        BACKENDS["numba"] = _build_numba_backend()
        ACTIVE_BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        ACTIVE_BACKEND = "numpy"
else:
    ACTIVE_BACKEND = "numpy"

_active = BACKENDS[ACTIVE_BACKEND]

laguerre_table = _active["laguerre_table"]
laguerre_block = _active["laguerre_block"]
laguerre_dot = _active["laguerre_dot"]
transport_synthesis_f64 = _active["transport_synthesis_f64"]
transport_synthesis_f32 = _active["transport_synthesis_f32"]
matrix_phases = _active["matrix_phases"]

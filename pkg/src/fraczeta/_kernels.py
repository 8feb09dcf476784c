"""Hot numeric kernels: heat-trace sums and complex power sums.

Two interchangeable backends. The numba one uses Kahan-compensated serial
summation (no fastmath, no parallel reduction) so results are deterministic
and agree with numpy's pairwise sums to ~1e-15 relative. Set
FRACZETA_NUMBA=0 to force the pure-numpy path; if numba is not importable
the fallback is selected silently.
"""

from __future__ import annotations

import os

import numpy as np

_want_numba = os.environ.get("FRACZETA_NUMBA", "1") != "0"

if _want_numba:
    try:
        from numba import njit
    except ImportError:
        _want_numba = False

BACKEND = "numba" if _want_numba else "numpy"

# t-chunk size for the numpy grid kernel; keeps the outer-product block small
_CHUNK = 64


def _heat_sum_np(values: np.ndarray, mults: np.ndarray, t: float) -> float:
    return float(np.sum(mults * np.exp(-values * t)))


def _heat_sum_grid_np(values: np.ndarray, mults: np.ndarray, ts: np.ndarray) -> np.ndarray:
    out = np.empty(len(ts))
    for i in range(0, len(ts), _CHUNK):
        block = np.exp(-np.outer(ts[i : i + _CHUNK], values))
        out[i : i + _CHUNK] = block @ mults
    return out


def _power_sum_np(values: np.ndarray, mults: np.ndarray, expo: complex, gamma: float) -> complex:
    return complex(np.sum(mults * np.exp(-expo * np.log(values + gamma))))


if _want_numba:

    @njit(cache=True)
    def _heat_sum_nb(values, mults, t):  # pragma: no cover - jitted
        acc = 0.0
        comp = 0.0
        for i in range(values.shape[0]):
            y = mults[i] * np.exp(-values[i] * t) - comp
            tot = acc + y
            comp = (tot - acc) - y
            acc = tot
        return acc

    @njit(cache=True)
    def _heat_sum_grid_nb(values, mults, ts):  # pragma: no cover - jitted
        out = np.empty(ts.shape[0])
        for j in range(ts.shape[0]):
            acc = 0.0
            comp = 0.0
            t = ts[j]
            for i in range(values.shape[0]):
                y = mults[i] * np.exp(-values[i] * t) - comp
                tot = acc + y
                comp = (tot - acc) - y
                acc = tot
            out[j] = acc
        return out

    @njit(cache=True)
    def _power_sum_nb(values, mults, expo, gamma):  # pragma: no cover - jitted
        acc = 0.0 + 0.0j
        comp = 0.0 + 0.0j
        for i in range(values.shape[0]):
            y = mults[i] * np.exp(-expo * np.log(values[i] + gamma)) - comp
            tot = acc + y
            comp = (tot - acc) - y
            acc = tot
        return acc


def heat_sum(values: np.ndarray, mults: np.ndarray, t: float) -> float:
    """Sum of mult*exp(-value*t) over the batch."""
    if len(values) == 0:
        return 0.0
    if _want_numba:
        return float(_heat_sum_nb(values, mults, float(t)))
    return _heat_sum_np(values, mults, float(t))


def heat_sum_grid(values: np.ndarray, mults: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """heat_sum evaluated at every t in ts."""
    ts = np.asarray(ts, dtype=np.float64)
    if len(values) == 0:
        return np.zeros(len(ts))
    if _want_numba:
        return _heat_sum_grid_nb(values, mults, ts)
    return _heat_sum_grid_np(values, mults, ts)


def power_sum(values: np.ndarray, mults: np.ndarray, expo: complex, gamma: float) -> complex:
    """Sum of mult*(value+gamma)^(-expo); every base must be positive."""
    if len(values) == 0:
        return 0.0 + 0.0j
    if _want_numba:
        return complex(_power_sum_nb(values, mults, complex(expo), float(gamma)))
    return _power_sum_np(values, mults, complex(expo), float(gamma))

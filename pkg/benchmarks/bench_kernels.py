"""Compare the numba and numpy kernel backends on the two hot sums.

Run twice to see both paths:

    python3 benchmarks/bench_kernels.py
    FRACZETA_NUMBA=0 python3 benchmarks/bench_kernels.py

or let the script spawn its own numpy-mode subprocess (the default), which
prints a side-by-side table.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import numpy as np


def _bench_current_backend() -> dict:
    from fraczeta import _kernels

    rng = np.random.default_rng(1)
    values = np.sort(rng.uniform(1.0, 1e6, 20000))
    mults = np.ceil(rng.uniform(1.0, 9.0, 20000))
    ts = np.exp(np.linspace(np.log(1e-6), np.log(10.0), 512))

    # warm-up (first numba call pays compilation)
    _kernels.heat_sum_grid(values, mults, ts[:4])
    _kernels.power_sum(values, mults, 1.3 + 2.0j, 0.5)

    reps = 20
    t0 = time.perf_counter()
    for _ in range(reps):
        z = _kernels.heat_sum_grid(values, mults, ts)
    heat_ms = (time.perf_counter() - t0) / reps * 1e3

    t0 = time.perf_counter()
    for _ in range(reps):
        w = _kernels.power_sum(values, mults, 1.3 + 2.0j, 0.5)
    power_ms = (time.perf_counter() - t0) / reps * 1e3

    return {
        "backend": _kernels.BACKEND,
        "heat_sum_grid_ms": heat_ms,
        "power_sum_ms": power_ms,
        "heat_checksum": float(z.sum()),
        "power_checksum": [w.real, w.imag],
    }


def main() -> int:
    if os.environ.get("_FRACZETA_BENCH_CHILD"):
        print(json.dumps(_bench_current_backend()))
        return 0

    mine = _bench_current_backend()
    env = dict(os.environ, FRACZETA_NUMBA="0", _FRACZETA_BENCH_CHILD="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__)], env=env, capture_output=True, text=True
    )
    rows = [mine]
    if child.returncode == 0:
        rows.append(json.loads(child.stdout))
    else:
        print(child.stderr, file=sys.stderr)

    print(f"{'backend':>8} | {'heat_sum_grid (512x20k)':>24} | {'power_sum (20k)':>16}")
    print("-" * 56)
    for r in rows:
        print(f"{r['backend']:>8} | {r['heat_sum_grid_ms']:>21.2f} ms | {r['power_sum_ms']:>13.3f} ms")
    if len(rows) == 2:
        agree = abs(rows[0]["heat_checksum"] - rows[1]["heat_checksum"]) <= 1e-9 * abs(
            rows[0]["heat_checksum"]
        )
        print(f"checksums agree to 1e-9 relative: {agree}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

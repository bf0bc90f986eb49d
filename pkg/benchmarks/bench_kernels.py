#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Run from the repository root:

    python benchmarks/bench_kernels.py

Cases mirror the real workloads: the DTFT sizes of the spectral-rate
quadrature and the figure spectra, and the RK4 lengths of the Ramsey and
readout simulations.
"""
import time

import numpy as np

from dragprobe._kernels import _fallback

try:
    from dragprobe._kernels import _core
except ImportError:
    _core = None

DTFT_CASES = [
    ("dtft 210-ns pulse x 3k grid", 2101, 2963),
    ("dtft 2-us pulse x 2k grid", 20101, 2001),
    ("dtft Parseval grid", 2101, 21010),
]

RK4_CASES = [
    ("rk4 ramsey point (tau + ring-down)", 12_021),
    ("rk4 2-us readout + ring-down", 49_101),
]


def _time(func, *args, repeat=3):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    rows = []
    for label, n, m in DTFT_CASES:
        samples = rng.normal(size=n) + 1j * rng.normal(size=n)
        freqs = np.linspace(-150.0, 150.0, m)
        t_np = _time(_fallback.dtft_phase_sum, samples, 0.0, 1e-4, freqs)
        t_cy = _time(_core.dtft_phase_sum, samples, 0.0, 1e-4, freqs) if _core else None
        rows.append((label, t_np, t_cy))
    for label, n in RK4_CASES:
        n |= 1  # odd length for the paired-step scheme
        drive = (rng.normal(size=n) + 1j * rng.normal(size=n)) * 0.1
        lam = 6.9 + 62.8j
        t_np = _time(_fallback.rk4_pair_step, drive, 5e-4, lam)
        t_cy = _time(_core.rk4_pair_step, drive, 5e-4, lam) if _core else None
        rows.append((label, t_np, t_cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numpy':>10}  {'compiled':>10}  {'speedup':>8}")
    for label, t_np, t_cy in rows:
        if t_cy is None:
            print(f"{label:<{width}}  {t_np * 1e3:>8.2f}ms  {'n/a':>10}  {'':>8}")
        else:
            print(
                f"{label:<{width}}  {t_np * 1e3:>8.2f}ms  {t_cy * 1e3:>8.2f}ms  "
                f"{t_np / t_cy:>7.1f}x"
            )
    if _core is None:
        print("\ncompiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()

"""Pure-NumPy implementations of the hot kernels.

Selected at import time when the compiled extension is unavailable or when
``DRAGPROBE_PURE_PYTHON`` is set.  Same contracts as ``_core``:

* ``dtft_phase_sum`` evaluates ``sum_n s[n] * exp(-2i*pi*f*(t0 + n*dt))``
  for every frequency; the caller supplies times and frequencies in
  reciprocal units (here microseconds and MHz).
* ``rk4_pair_step`` integrates ``da/dt = -lam*a + drive(t)`` from ``a=0``
  with classical RK4 of step ``h = 2*dt``, consuming consecutive sample
  triples so every stage uses an exact drive value (no interpolation).
  ``drive`` must have odd length; the state is returned on the stride-2
  grid, ``(len(drive)-1)//2 + 1`` points.
"""
from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def dtft_phase_sum(samples: np.ndarray, t0: float, dt: float, freqs: np.ndarray) -> np.ndarray:
    samples = np.ascontiguousarray(samples, dtype=np.complex128)
    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    t = t0 + dt * np.arange(samples.size)
    out = np.empty(freqs.size, dtype=np.complex128)
    # one dot product per frequency: each point's value is bit-identical no
    # matter how the frequency axis is batched or scheduled
    for j, f in enumerate(freqs):
        out[j] = np.exp(t * (-2j * np.pi * f)) @ samples
    return out


def rk4_pair_step(drive: np.ndarray, dt: float, lam: complex) -> np.ndarray:
    n = len(drive)
    if n % 2 != 1:
        raise ValueError("drive length must be odd for the paired-step RK4 scheme")
    h = 2.0 * dt
    lam = complex(lam)
    ev = [complex(x) for x in drive]  # scalar complex math beats tiny-array ops
    n_out = (n - 1) // 2 + 1
    out = np.empty(n_out, dtype=np.complex128)
    a = 0j
    out[0] = a
    for i in range(n_out - 1):
        e0 = ev[2 * i]
        e1 = ev[2 * i + 1]
        e2 = ev[2 * i + 2]
        k1 = -lam * a + e0
        k2 = -lam * (a + 0.5 * h * k1) + e1
        k3 = -lam * (a + 0.5 * h * k2) + e1
        k4 = -lam * (a + h * k3) + e2
        a = a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = a
    return out

"""Pulse spectra on arbitrary frequency grids, by direct summation.

Convention: S(f) = dt * sum_n s_n exp(-i*2*pi*f*t_n), so a complex tone
exp(+i*2*pi*f0*t) peaks at f = +f0 and the DRAG notch of the waveform
module falls at f = +notch_freq.  Direct O(N*M) summation instead of an
FFT: grids are small at desk scale and the dephasing integrals need
arbitrary non-uniform frequency grids.

Frequencies in MHz (baseband offsets from the implicit carrier), spectral
amplitudes in dimensionless*ns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import dtft_phase_sum
from .errors import UndefinedReferenceError, ValidationError
from .waveform import IQWaveform

NS_PER_US = 1e3


@dataclass(frozen=True)
class SpectrumGrid:
    """Complex spectral amplitudes on an explicit, strictly increasing grid."""

    freqs: np.ndarray   # MHz
    amps: np.ndarray    # dimensionless * ns

    def __post_init__(self):
        freqs = np.ascontiguousarray(self.freqs, dtype=np.float64)
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "amps", amps)
        if freqs.size == 0:
            raise ValidationError("frequency grid must be non-empty")
        if freqs.size != amps.size:
            raise ValidationError("freqs and amps must have the same length")
        if freqs.size > 1 and not np.all(np.diff(freqs) > 0):
            raise ValidationError("freqs must be strictly increasing")


def dtft(wf: IQWaveform, freqs) -> SpectrumGrid:
    """Evaluate S(f) = dt * sum_n s_n exp(-2i*pi*f*t_n) at the given MHz points."""
    freqs = np.atleast_1d(np.asarray(freqs, dtype=np.float64))
    if freqs.size == 0:
        raise ValidationError("frequency list must be non-empty")
    if freqs.size > 1 and not np.all(np.diff(freqs) > 0):
        raise ValidationError("freqs must be strictly increasing")
    # MHz * us phases; the dt prefactor stays in ns so amplitudes carry ns.
    sums = dtft_phase_sum(wf.samples, wf.t_start / NS_PER_US, wf.dt / NS_PER_US, freqs)
    return SpectrumGrid(freqs=freqs, amps=wf.dt * sums)


def dtft_at(wf: IQWaveform, f_mhz: float) -> complex:
    """Single-frequency convenience wrapper around :func:`dtft`."""
    return complex(dtft(wf, [f_mhz]).amps[0])


def notch_depth(plain: IQWaveform, dragged: IQWaveform, f_mhz: float) -> float:
    """20*log10(|S_drag(f)| / |S_plain(f)|) in dB; negative means suppression."""
    if f_mhz == 0.0:
        raise ValidationError("notch depth is undefined at f = 0 (DC reference)")
    ref = abs(dtft_at(plain, f_mhz))
    if ref == 0.0:
        raise UndefinedReferenceError(f"plain spectrum is exactly zero at {f_mhz} MHz")
    return 20.0 * np.log10(abs(dtft_at(dragged, f_mhz)) / ref)


def parseval_check(wf: IQWaveform, points_per_sample: int = 10) -> tuple[float, float]:
    """Return (frequency-side, time-side) energies of the discrete Parseval identity.

    The frequency sum runs over exactly one DTFT period (width 1/dt) on a
    uniform grid of at least ``points_per_sample * N`` points, for which the
    rectangle rule reproduces ``dt * sum |s_n|^2`` to rounding error.
    """
    n = wf.samples.size
    period = NS_PER_US / wf.dt  # MHz
    m = points_per_sample * n
    step = period / m
    freqs = -period / 2.0 + step * np.arange(m)
    grid = dtft(wf, freqs)
    # amps are in ns units; energies in ns
    freq_sum = float(np.sum(np.abs(grid.amps) ** 2) * step / NS_PER_US)
    time_sum = float(wf.dt * np.sum(np.abs(wf.samples) ** 2))
    return freq_sum, time_sum

"""Cosine-flattop probe envelopes and the derivative-quadrature transform.

The probe envelope is real-valued: a cosine-shaped rise, a flat plateau and
a mirrored cosine fall.  The DRAG transform adds the scaled time derivative
on the quadrature channel,

    W_drag(t) = W(t) + i * dW/dt / eta,      eta = 2*pi*notch_freq,

which places a first-order zero of the pulse spectrum at the (ordinary)
notch frequency.  ``eta`` is angular; the conversion from the user-facing
MHz notch frequency happens in exactly one place, inside ``apply_drag``.

All times are in ns, frequencies in MHz, amplitudes dimensionless.  All
values are immutable after construction and safe to share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, UndefinedNotchError, ValidationError

__all__ = [
    "EnvelopeSpec",
    "IQWaveform",
    "DragParams",
    "sample_envelope",
    "envelope_derivative",
    "apply_drag",
    "waveform_energy",
]


@dataclass(frozen=True)
class EnvelopeSpec:
    """Cosine-flattop envelope: per-edge durations, plateau and sample step (ns)."""

    amplitude: float
    rise_time: float
    plateau: float
    fall_time: float
    sample_dt: float

    def __post_init__(self):
        if not 0.0 <= self.amplitude <= 1.0:
            raise ValidationError(f"amplitude must be in [0, 1], got {self.amplitude}")
        for name in ("rise_time", "plateau", "fall_time"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.total_duration <= 0:
            raise ValidationError("total duration (rise_time + plateau + fall_time) must be > 0")
        if self.sample_dt <= 0:
            raise ValidationError(f"sample_dt must be > 0, got {self.sample_dt}")
        edges = [t for t in (self.rise_time, self.fall_time) if t > 0]
        if edges and self.sample_dt > min(edges) / 10.0:
            raise ValidationError(
                f"sample_dt={self.sample_dt} under-resolves the {min(edges)} ns edge "
                "(need >= 10 samples per edge)"
            )

    @property
    def total_duration(self) -> float:
        return self.rise_time + self.plateau + self.fall_time


@dataclass(frozen=True)
class IQWaveform:
    """Uniformly sampled complex baseband envelope; the carrier is implicit.

    Samples live on ``t_start + n*dt`` for ``n = 0..N-1`` (closed at the
    left end).  Energy is the rectangle-rule sum ``dt * sum |s_n|^2`` (ns).
    """

    samples: np.ndarray
    dt: float
    t_start: float = 0.0

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.complex128)
        object.__setattr__(self, "samples", samples)
        if samples.size == 0:
            raise ValidationError("samples must be non-empty")
        if self.dt <= 0:
            raise ValidationError(f"dt must be > 0, got {self.dt}")

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.samples.size)

    @property
    def duration(self) -> float:
        return self.dt * (self.samples.size - 1)

    def same_grid(self, other: "IQWaveform") -> bool:
        return (
            self.samples.size == other.samples.size
            and self.dt == other.dt
            and self.t_start == other.t_start
        )


@dataclass(frozen=True)
class DragParams:
    """Engineered notch frequency (ordinary MHz; ``eta = 2*pi*notch_freq``)."""

    notch_freq: float
    enabled: bool = True

    def __post_init__(self):
        if self.enabled and self.notch_freq == 0.0:
            raise UndefinedNotchError("notch_freq must be nonzero when DRAG is enabled")


def _segment_masks(spec: EnvelopeSpec, t: np.ndarray):
    """Half-open segments [start, end); the cosine fall keeps its endpoint."""
    rise_end = spec.rise_time
    plateau_end = spec.rise_time + spec.plateau
    on_rise = t < rise_end if spec.rise_time > 0 else np.zeros_like(t, dtype=bool)
    on_plateau = (t >= rise_end) & (t < plateau_end)
    if spec.fall_time > 0:
        on_fall = t >= plateau_end
    else:
        on_fall = np.zeros_like(t, dtype=bool)
    return on_rise, on_plateau, on_fall


def _grid(spec: EnvelopeSpec) -> np.ndarray:
    n = int(round(spec.total_duration / spec.sample_dt)) + 1
    return spec.sample_dt * np.arange(n)


def sample_envelope(spec: EnvelopeSpec) -> IQWaveform:
    """Sample the cosine-flattop envelope W(t) on its own grid.

    W(t) = A*(1 - cos(pi*t/t_r))/2 on the rise, A on the plateau, the
    mirrored cosine on the fall, zero outside.
    """
    t = _grid(spec)
    on_rise, on_plateau, on_fall = _segment_masks(spec, t)
    w = np.zeros(t.size)
    if spec.rise_time > 0:
        w[on_rise] = spec.amplitude * (1.0 - np.cos(np.pi * t[on_rise] / spec.rise_time)) / 2.0
    w[on_plateau] = spec.amplitude
    if spec.fall_time > 0:
        u = (t[on_fall] - spec.rise_time - spec.plateau) / spec.fall_time
        w[on_fall] = spec.amplitude * (1.0 + np.cos(np.pi * u)) / 2.0
    return IQWaveform(samples=w, dt=spec.sample_dt)


def envelope_derivative(spec: EnvelopeSpec) -> IQWaveform:
    """Analytic per-segment derivative dW/dt (per ns) on the same grid.

    Analytic rather than finite-difference: a numeric derivative would
    degrade the notch depth by O(dt).
    """
    t = _grid(spec)
    on_rise, _, on_fall = _segment_masks(spec, t)
    d = np.zeros(t.size)
    if spec.rise_time > 0:
        d[on_rise] = (
            spec.amplitude * np.pi / (2.0 * spec.rise_time)
            * np.sin(np.pi * t[on_rise] / spec.rise_time)
        )
    if spec.fall_time > 0:
        u = (t[on_fall] - spec.rise_time - spec.plateau) / spec.fall_time
        d[on_fall] = -spec.amplitude * np.pi / (2.0 * spec.fall_time) * np.sin(np.pi * u)
    return IQWaveform(samples=d, dt=spec.sample_dt)


def apply_drag(envelope: IQWaveform, derivative: IQWaveform, drag: DragParams) -> IQWaveform:
    """Return W + i*dW/dt / eta; the envelope unchanged when DRAG is off."""
    if not drag.enabled:
        return envelope
    if drag.notch_freq == 0.0:
        raise UndefinedNotchError("notch_freq must be nonzero when DRAG is enabled")
    if not envelope.same_grid(derivative):
        raise GridMismatchError("envelope and derivative must share the sample grid")
    # The single MHz -> angular-per-ns conversion: eta = 2*pi*f_MHz*1e-3 / ns.
    eta_per_ns = 2.0 * np.pi * drag.notch_freq * 1e-3
    samples = envelope.samples + 1j * derivative.samples / eta_per_ns
    return IQWaveform(samples=samples, dt=envelope.dt, t_start=envelope.t_start)


def waveform_energy(wf: IQWaveform) -> float:
    """Rectangle-rule energy dt * sum |s_n|^2, in ns (amplitudes dimensionless)."""
    return float(wf.dt * np.sum(np.abs(wf.samples) ** 2))

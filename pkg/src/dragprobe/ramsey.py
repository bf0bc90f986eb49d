"""Ramsey interferometry with a pseudo-readout pulse between the pi/2 gates.

The qubit coherence factor accumulated over the pulse plus a ring-down
window of 10/kappa is

    C = exp(-D + i*phi - T_tot/T2)

with D and phi the dephasing and Stark-phase integrals from the simulated
pointer-state trajectories.  The emitted fringe is the ideal Born
probability

    signal(theta) = 1/2 + (|C|/2) * sin(theta + phi)
                  = 1/2 - (|C|/2) * sin(theta + phi + pi)

so the linear sinusoid fit returns contrast c = |C|/2 and theta0 = phi: a
positive Stark shift advances the fitted phase.  The pi/2 gates themselves
are ideal instantaneous rotations; the final readout is idealized with
optional seeded Gaussian noise (NumPy PCG64 via ``default_rng``).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .dispersive import (
    DispersiveParams,
    coherence_integrals,
    default_ringdown_ns,
    simulate_cavity,
)
from .errors import FitError, UndefinedNotchError, ValidationError
from .spectrum import dtft
from .waveform import (
    DragParams,
    EnvelopeSpec,
    IQWaveform,
    apply_drag,
    envelope_derivative,
    sample_envelope,
)

NS_PER_US = 1e3

#: Sentinel cap for non-decaying data in fit_decay / effective_decay_constant.
T2_EFF_CAP_US = 1e6


@dataclass(frozen=True)
class RamseySweep:
    """Fringe signal versus the phase of the second pi/2 pulse."""

    thetas: np.ndarray
    signal: np.ndarray

    def __post_init__(self):
        thetas = np.ascontiguousarray(self.thetas, dtype=np.float64)
        signal = np.ascontiguousarray(self.signal, dtype=np.float64)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "signal", signal)
        if thetas.size != signal.size:
            raise ValidationError("thetas and signal must share length")


@dataclass(frozen=True)
class RamseyPoint:
    """Fitted fringe: contrast c, phase offset theta0, P_e = 2c."""

    contrast: float
    theta0: float
    pe: float

    def __post_init__(self):
        if not 0.0 <= self.pe <= 1.0:
            raise ValidationError(f"pe must lie in [0, 1], got {self.pe}")


@dataclass(frozen=True)
class BeatingScan:
    """Fitted Ramsey points versus pseudo-pulse plateau duration."""

    taus: np.ndarray          # ns
    points: tuple[RamseyPoint, ...]
    t_tot: np.ndarray         # ns, total window (pulse + ring-down) per tau

    def __post_init__(self):
        taus = np.ascontiguousarray(self.taus, dtype=np.float64)
        t_tot = np.ascontiguousarray(self.t_tot, dtype=np.float64)
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "t_tot", t_tot)
        object.__setattr__(self, "points", tuple(self.points))
        if taus.size > 1 and not np.all(np.diff(taus) > 0):
            raise ValidationError("taus must be strictly increasing")
        if len(self.points) != taus.size or t_tot.size != taus.size:
            raise ValidationError("points and t_tot must match taus in length")

    @property
    def contrasts(self) -> np.ndarray:
        return np.array([p.contrast for p in self.points])

    @property
    def theta0s(self) -> np.ndarray:
        return np.array([p.theta0 for p in self.points])


def simulate_ramsey_point(
    params: DispersiveParams,
    pulse: IQWaveform,
    amp_cal: float,
    n_theta: int = 32,
    noise_sigma: float = 0.0,
    seed: int | Sequence[int] = 0,
) -> RamseySweep:
    """Simulate one phase-swept fringe for a given pseudo-readout pulse."""
    if n_theta < 8:
        raise ValidationError(f"n_theta must be >= 8, got {n_theta}")
    if noise_sigma < 0:
        raise ValidationError(f"noise_sigma must be >= 0, got {noise_sigma}")
    ringdown = default_ringdown_ns(params)
    traj = simulate_cavity(params, pulse, amp_cal, ringdown=ringdown)
    dephase, phi = coherence_integrals(traj)
    t_tot_us = (pulse.duration + ringdown) / NS_PER_US
    coherence = np.exp(-dephase + 1j * phi - t_tot_us / params.t2)
    thetas = 2.0 * np.pi * np.arange(n_theta) / n_theta
    signal = 0.5 + 0.5 * np.imag(coherence * np.exp(1j * thetas))
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        signal = signal + rng.normal(0.0, noise_sigma, n_theta)
    return RamseySweep(thetas=thetas, signal=signal)


def fit_sinusoid(thetas, signal) -> tuple[float, float, float]:
    """Linear LSQ onto {sin, cos, 1}: returns (c, theta0, offset), exact when noiseless."""
    thetas = np.asarray(thetas, dtype=np.float64)
    signal = np.asarray(signal, dtype=np.float64)
    if thetas.size < 3 or np.unique(thetas).size < 3:
        raise FitError("need at least 3 distinct phases to fit a sinusoid")
    basis = np.column_stack([np.sin(thetas), np.cos(thetas), np.ones_like(thetas)])
    if np.linalg.matrix_rank(basis) < 3:
        raise FitError("phase set is rank-deficient for the sinusoid basis")
    (a, b, offset), *_ = np.linalg.lstsq(basis, signal, rcond=None)
    c = float(np.hypot(a, b))
    theta0 = float(np.arctan2(b, a))
    return c, theta0, float(offset)


def scan_plateau(
    params: DispersiveParams,
    pulse_spec: EnvelopeSpec,
    taus,
    drag: bool,
    amp_cal: float,
    noise_sigma: float = 0.0,
    seed: int = 0,
    n_theta: int = 32,
) -> BeatingScan:
    """Run simulate_ramsey_point + fit_sinusoid for each plateau duration.

    With DRAG on, the notch is placed on the resonator (-delta_d), which
    requires a nonzero pulse detuning.  The per-point noise stream is
    derived from (seed, point index) so results are schedule-independent.
    """
    taus = np.asarray(taus, dtype=np.float64)
    if drag:
        if params.delta_d == 0.0:
            raise UndefinedNotchError("DRAG requires a nonzero pulse detuning")
        drag_params = DragParams(notch_freq=-params.delta_d)
    ringdown = default_ringdown_ns(params)
    points = []
    t_tot = np.empty(taus.size)
    for k, tau in enumerate(taus):
        spec_k = replace(pulse_spec, plateau=float(tau))
        envelope = sample_envelope(spec_k)
        pulse = apply_drag(envelope, envelope_derivative(spec_k), drag_params) if drag else envelope
        sweep = simulate_ramsey_point(
            params, pulse, amp_cal, n_theta=n_theta, noise_sigma=noise_sigma, seed=[seed, k]
        )
        c, theta0, _ = fit_sinusoid(sweep.thetas, sweep.signal)
        points.append(RamseyPoint(contrast=c, theta0=theta0, pe=min(2.0 * c, 1.0)))
        t_tot[k] = spec_k.total_duration + ringdown
    return BeatingScan(taus=taus, points=points, t_tot=t_tot)


def fit_decay(taus, contrasts) -> float:
    """Log-linear fit of c0*exp(-tau/T2eff); taus in ns, T2eff in us.

    Non-decaying data (slope >= 0) returns the documented cap
    ``T2_EFF_CAP_US`` instead of an infinite or negative constant.  Two
    points determine the fit exactly.
    """
    taus = np.asarray(taus, dtype=np.float64)
    contrasts = np.asarray(contrasts, dtype=np.float64)
    if taus.size < 2:
        raise ValidationError("need at least 2 points to fit a decay")
    if np.any(contrasts <= 0):
        raise ValidationError("contrasts must be positive for a log-linear decay fit")
    slope, _ = np.polyfit(taus / NS_PER_US, np.log(contrasts), 1)
    if slope >= 0:
        return T2_EFF_CAP_US
    return float(min(-1.0 / slope, T2_EFF_CAP_US))


def effective_decay_constant(taus, contrasts) -> float:
    """First 1/e-crossing time (us) of the contrast, measured from the first point.

    For a beating contrast curve this captures the effective coherence loss
    the oscillation causes, which a log-linear fit averages away; for a
    clean exponential it agrees with fit_decay.  Returns ``T2_EFF_CAP_US``
    when the curve never crosses.
    """
    taus = np.asarray(taus, dtype=np.float64)
    contrasts = np.asarray(contrasts, dtype=np.float64)
    if taus.size < 2:
        raise ValidationError("need at least 2 points")
    threshold = contrasts[0] / np.e
    below = np.nonzero(contrasts < threshold)[0]
    if below.size == 0:
        return T2_EFF_CAP_US
    i = int(below[0])
    if i == 0:
        return 0.0
    # linear interpolation between the bracketing samples
    frac = (contrasts[i - 1] - threshold) / (contrasts[i - 1] - contrasts[i])
    tau_cross = taus[i - 1] + frac * (taus[i] - taus[i - 1])
    return float((tau_cross - taus[0]) / NS_PER_US)


def beat_frequency(
    scan: BeatingScan,
    f_max: float | None = None,
    f_step: float = 0.05,
) -> float:
    """Dominant oscillation frequency (MHz) of the contrast-versus-tau curve.

    The exponential trend is divided out first (log-linear fit) because its
    spectral leakage otherwise dominates the lowest bins; the residual is
    mean-subtracted and handed to the spectrum module, and the magnitude
    peak above the trend floor ~1.5/span is returned.
    """
    taus = scan.taus
    contrasts = scan.contrasts
    if taus.size < 4:
        raise ValidationError("need at least 4 scan points for a beat estimate")
    steps = np.diff(taus)
    if not np.allclose(steps, steps[0], rtol=1e-9):
        raise ValidationError("beat_frequency requires a uniformly spaced tau scan")
    step_ns = float(steps[0])
    span_us = (taus[-1] - taus[0]) / NS_PER_US
    slope, intercept = np.polyfit(taus / NS_PER_US, np.log(contrasts), 1)
    residual = contrasts / np.exp(intercept + slope * taus / NS_PER_US) - 1.0
    residual = residual - residual.mean()
    f_min = 1.5 / span_us
    if f_max is None:
        f_max = 0.45 * NS_PER_US / step_ns  # stay below the scan Nyquist
    freqs = np.arange(f_min, f_max, f_step)
    if freqs.size == 0:
        raise ValidationError(
            "scan too short or too coarse for a beat estimate "
            f"(window {f_min:.2f}..{f_max:.2f} MHz is empty)"
        )
    # the scan is a uniformly sampled series; reuse the DTFT machinery
    series = IQWaveform(samples=residual.astype(np.complex128), dt=step_ns, t_start=taus[0])
    grid = dtft(series, freqs)
    return float(freqs[np.argmax(np.abs(grid.amps))])

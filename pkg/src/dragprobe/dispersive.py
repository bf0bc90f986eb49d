"""Dispersively coupled qubit-resonator dynamics and S21 extraction.

Internal unit system: time in us, angular frequencies in rad/us.  All
user-facing frequencies are ordinary MHz (the hardware numbers are quoted
as kappa/2pi, 2chi/2pi); ``DispersiveParams`` owns the single conversion
layer via its ``*_angular`` properties.

Pointer-state equations of motion (s = -1 ground, +1 excited):

    d alpha_s / dt = -[i*(Delta_d + s*chi) + kappa/2] * alpha_s + eps(t)

with the drive eps(t) = i*sqrt(kappa)*amp_cal*W(t), all angular.  The
resonator pull convention puts the ground-state resonance at -chi; every
reported quantity is symmetric under the opposite choice combined with
Delta_d -> -Delta_d.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from ._kernels import rk4_pair_step
from .errors import FitError, ResolutionError, ValidationError
from .waveform import IQWaveform

NS_PER_US = 1e3
TWO_PI = 2.0 * np.pi

#: Ring-down window lengths used by the coherence integrals, in units of
#: 1/kappa with kappa in ordinary MHz (10/kappa = 4.5 us for kappa = 2.2).
RINGDOWN_KAPPA_FACTOR = 10.0


@dataclass(frozen=True)
class DispersiveParams:
    """Resonator linewidth, dispersive shift, drive detuning, qubit T2.

    kappa: kappa/2pi in MHz; chi: chi/2pi in MHz (2chi is the full
    ground/excited splitting); delta_d: (omega_r - omega_d)/2pi in MHz;
    t2: transverse relaxation time in us.
    """

    kappa: float
    chi: float
    delta_d: float
    t2: float

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValidationError(f"kappa must be > 0, got {self.kappa}")
        if self.t2 <= 0:
            raise ValidationError(f"t2 must be > 0, got {self.t2}")

    @property
    def kappa_angular(self) -> float:
        return TWO_PI * self.kappa

    @property
    def chi_angular(self) -> float:
        return TWO_PI * self.chi

    @property
    def delta_d_angular(self) -> float:
        return TWO_PI * self.delta_d


@dataclass(frozen=True)
class CavityTrajectory:
    """Pointer-state amplitudes alpha_g(t), alpha_e(t) on a uniform grid (ns)."""

    times: np.ndarray
    alpha_g: np.ndarray
    alpha_e: np.ndarray
    params: DispersiveParams

    def __post_init__(self):
        for name in ("times", "alpha_g", "alpha_e"):
            arr = np.ascontiguousarray(
                getattr(self, name), dtype=np.float64 if name == "times" else np.complex128
            )
            object.__setattr__(self, name, arr)
        if not (self.times.size == self.alpha_g.size == self.alpha_e.size):
            raise ValidationError("times, alpha_g, alpha_e must share length")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ValidationError("times must be strictly increasing")


def drive_strength(params: DispersiveParams, amp_cal: float, amplitude: float) -> complex:
    """eps = i*sqrt(kappa)*amp_cal*A in angular units (rad/us)."""
    return 1j * np.sqrt(params.kappa_angular) * amp_cal * amplitude


def steady_state_alpha(params: DispersiveParams, eps: complex) -> tuple[complex, complex]:
    """Closed-form long-time pointer states alpha_s = eps / (i*(Delta_d + s*chi) + kappa/2)."""
    ka = params.kappa_angular
    half = ka / 2.0
    alpha_g = eps / (1j * (params.delta_d_angular - params.chi_angular) + half)
    alpha_e = eps / (1j * (params.delta_d_angular + params.chi_angular) + half)
    return complex(alpha_g), complex(alpha_e)


def default_ringdown_ns(params: DispersiveParams) -> float:
    """Ring-down window RINGDOWN_KAPPA_FACTOR / kappa, converted to ns."""
    return RINGDOWN_KAPPA_FACTOR / params.kappa * NS_PER_US


def simulate_cavity(
    params: DispersiveParams,
    drive: IQWaveform,
    amp_cal: float,
    ringdown: float = 0.0,
) -> CavityTrajectory:
    """Integrate both pointer states over the drive plus a ring-down window.

    Classical fourth-order Runge-Kutta with step h = 2*dt: consecutive
    sample pairs provide exact drive values at every stage, preserving the
    fourth-order convergence without interpolating the envelope.  The
    trajectory is therefore reported on the stride-2 grid.  alpha_s(0) = 0.

    Parameters
    ----------
    drive:
        Baseband waveform (possibly DRAG-shaped); eps(t) = i*sqrt(kappa) *
        amp_cal * drive(t).
    ringdown:
        Extra zero-drive time appended after the waveform, in ns.
    """
    if ringdown < 0:
        raise ValidationError(f"ringdown must be >= 0, got {ringdown}")
    f_max = max(abs(params.delta_d) + abs(params.chi), params.kappa)  # MHz
    dt_limit_ns = NS_PER_US / (20.0 * f_max)
    if drive.dt > dt_limit_ns:
        raise ResolutionError(
            f"dt={drive.dt} ns too coarse for f_max={f_max} MHz (limit {dt_limit_ns:.3g} ns)"
        )
    n_ring = int(np.ceil(ringdown / drive.dt)) if ringdown > 0 else 0
    samples = np.concatenate([drive.samples, np.zeros(n_ring, dtype=np.complex128)])
    if samples.size % 2 == 0:  # paired-step scheme needs an odd sample count
        samples = np.concatenate([samples, np.zeros(1, dtype=np.complex128)])
    eps = drive_strength(params, amp_cal, 1.0) * samples
    dt_us = drive.dt / NS_PER_US
    half = params.kappa_angular / 2.0
    lam_g = 1j * (params.delta_d_angular - params.chi_angular) + half
    lam_e = 1j * (params.delta_d_angular + params.chi_angular) + half
    alpha_g = rk4_pair_step(eps, dt_us, lam_g)
    alpha_e = rk4_pair_step(eps, dt_us, lam_e)
    times = drive.t_start + 2.0 * drive.dt * np.arange(alpha_g.size)
    return CavityTrajectory(times=times, alpha_g=alpha_g, alpha_e=alpha_e, params=params)


def coherence_integrals(traj: CavityTrajectory) -> tuple[float, float]:
    """Rectangle-rule (D, phi): dephasing exponent and Stark phase.

    D   = integral 2*chi * Im[alpha_g * conj(alpha_e)] dt
    phi = integral 2*chi * Re[alpha_g * conj(alpha_e)] dt   (both over us)
    """
    if traj.times.size < 2:
        return 0.0, 0.0
    h_us = (traj.times[1] - traj.times[0]) / NS_PER_US
    prod = traj.alpha_g * np.conj(traj.alpha_e)
    two_chi = 2.0 * traj.params.chi_angular
    return (
        float(two_chi * np.sum(prod.imag) * h_us),
        float(two_chi * np.sum(prod.real) * h_us),
    )


def snr_proxy(traj: CavityTrajectory) -> float:
    """Pointer-state separation integral: sum |alpha_e - alpha_g|^2 dt (ns)."""
    if traj.times.size < 2:
        return 0.0
    h_ns = traj.times[1] - traj.times[0]
    return float(h_ns * np.sum(np.abs(traj.alpha_e - traj.alpha_g) ** 2))


def s21_response(params: DispersiveParams, probe_freqs, state: str) -> np.ndarray:
    """Symmetric notch-type feedline response for one qubit state.

    S21(f) = 1 - (kappa/2) / (i*(f - f_s) + kappa/2) with f in MHz relative
    to the bare resonator and f_s = +chi (excited) or -chi (ground); the 2pi
    factors cancel so the expression is unchanged in ordinary frequency.
    """
    if state not in ("g", "e"):
        raise ValidationError(f"state must be 'g' or 'e', got {state!r}")
    f = np.asarray(probe_freqs, dtype=np.float64)
    f_s = params.chi if state == "e" else -params.chi
    half = params.kappa / 2.0
    return 1.0 - half / (1j * (f - f_s) + half)


@dataclass(frozen=True)
class S21Fit:
    """fit_s21 result: linewidth, dip separation, per-state resonances, residual."""

    kappa: float
    two_chi: float
    f_g: float
    f_e: float
    residual: float


def _fit_single_dip(freqs: np.ndarray, trace: np.ndarray) -> tuple[float, float, float]:
    """Least-squares (f_s, kappa) of the symmetric notch model; returns residual too."""
    mag = np.abs(trace)
    if float(mag.min()) > 0.9:
        raise FitError(f"no dip found (min |S21| = {mag.min():.3f} > 0.9)")
    f_s0 = float(freqs[np.argmin(mag)])
    below = freqs[mag**2 < 0.5]
    kappa0 = float(below[-1] - below[0]) if below.size >= 2 else (freqs[-1] - freqs[0]) / 10.0
    kappa0 = max(kappa0, 1e-3)

    def residuals(p):
        f_s, kappa = p
        half = kappa / 2.0
        model = 1.0 - half / (1j * (freqs - f_s) + half)
        r = model - trace
        return np.concatenate([r.real, r.imag])

    sol = least_squares(residuals, x0=[f_s0, kappa0], method="lm")
    f_s, kappa = sol.x
    return float(f_s), float(abs(kappa)), float(np.sum(sol.fun**2))


def fit_s21(freqs, trace_g, trace_e) -> S21Fit:
    """Fit both state traces; returns averaged kappa and the dip separation 2chi.

    Expects traces dense enough that >= 10 points fall within one linewidth
    of each dip; raises FitError when no dip is present (min |S21| > 0.9).
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    trace_g = np.asarray(trace_g, dtype=np.complex128)
    trace_e = np.asarray(trace_e, dtype=np.complex128)
    if not (freqs.size == trace_g.size == trace_e.size):
        raise ValidationError("freqs and traces must share length")
    f_g, kappa_g, res_g = _fit_single_dip(freqs, trace_g)
    f_e, kappa_e, res_e = _fit_single_dip(freqs, trace_e)
    return S21Fit(
        kappa=(kappa_g + kappa_e) / 2.0,
        two_chi=abs(f_e - f_g),
        f_g=f_g,
        f_e=f_e,
        residual=res_g + res_e,
    )

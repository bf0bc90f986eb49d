"""Measurement-induced dephasing: monochromatic rate, spectral integral, maps.

The monochromatic rate for a drive of strength eps (all angular, rad/us):

    Gamma = 2*|eps|^2*chi^2*kappa
            / {[(Delta_d+chi)^2 + (kappa/2)^2] * [(Delta_d-chi)^2 + (kappa/2)^2]}

For a pulsed drive the constant |eps|^2 is replaced by a spectral density:
a baseband component at ordinary frequency f sits at detuning
Delta = Delta_d + 2*pi*f from the resonator (that pairing is fixed by the
transform sign convention of the spectrum module together with the cavity
equation of motion; the DRAG notch at -delta_d therefore lands exactly on
the resonator).  The broadened rate is the rectangle-rule quadrature

    Gamma' = sum_j K(Delta_j) * kappa * amp_cal^2 * |S(f_j)|^2 / T_eff * df

with K the Lorentzian-product kernel above, S the pulse spectrum and
T_eff = energy(W)/max|W|^2 the equivalent rectangular duration of the
in-phase envelope.  This normalization makes Gamma' -> Gamma exactly in the
long-pulse limit (the total spectral weight integrates to kappa*amp_cal^2*A^2).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dispersive import (
    DispersiveParams,
    coherence_integrals,
    default_ringdown_ns,
    simulate_cavity,
)
from .errors import ResolutionError, UndefinedNotchError, ValidationError
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
TWO_PI = 2.0 * np.pi


def _kernel(delta_ang: np.ndarray, chi_ang: float, kappa_ang: float) -> np.ndarray:
    k2 = (kappa_ang / 2.0) ** 2
    denom = ((delta_ang + chi_ang) ** 2 + k2) * ((delta_ang - chi_ang) ** 2 + k2)
    return 2.0 * chi_ang**2 * kappa_ang / denom


def monochromatic_rate(params: DispersiveParams, eps_mag: float) -> float:
    """Steady-state dephasing rate (1/us) for a monochromatic drive |eps| (rad/us).

    Valid in the long-time limit, once the measurement time exceeds the
    photon decay time (a few 1/kappa).
    """
    return float(abs(eps_mag) ** 2 * _kernel(
        np.asarray(params.delta_d_angular), params.chi_angular, params.kappa_angular
    ))


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform detuning grid (MHz, relative to the resonator) for the rate integral."""

    detuning_min: float
    detuning_max: float
    step: float

    def __post_init__(self):
        if self.step <= 0:
            raise ValidationError(f"step must be > 0, got {self.step}")
        if self.detuning_max <= self.detuning_min:
            raise ValidationError("detuning_max must exceed detuning_min")

    @property
    def detunings(self) -> np.ndarray:
        n = int(np.floor((self.detuning_max - self.detuning_min) / self.step + 0.5)) + 1
        return self.detuning_min + self.step * np.arange(n)


def default_quadrature_grid(params: DispersiveParams, pulse: IQWaveform) -> QuadratureGrid:
    """Grid covering the resonator band and the pulse's main spectral lobes."""
    duration_us = max(pulse.duration / NS_PER_US, 1e-6)
    step = min(params.kappa / 20.0, 1.0 / (4.0 * duration_us))
    span = abs(params.delta_d) + max(10.0 * params.kappa, 30.0 / duration_us, 25.0)
    return QuadratureGrid(detuning_min=-span, detuning_max=span, step=step)


def spectral_rate(
    params: DispersiveParams,
    pulse: IQWaveform,
    amp_cal: float,
    grid: QuadratureGrid | None = None,
) -> float:
    """Spectrally broadened dephasing rate Gamma' (1/us) of a pulsed drive.

    The kernel is evaluated at the detuning of each spectral component (the
    integration variable), not at the fixed carrier detuning; this is the
    reading under which a DRAG notch on the resonator suppresses the rate.
    T_eff comes from the in-phase envelope, so the DRAG quadrature changes
    only the spectral weights, not the normalization.
    """
    w_re = pulse.samples.real
    peak = float(np.max(np.abs(w_re)))
    if peak == 0.0:
        return 0.0
    if grid is None:
        grid = default_quadrature_grid(params, pulse)
    duration_us = max(pulse.duration / NS_PER_US, 1e-6)
    step_limit = min(params.kappa / 20.0, 1.0 / (4.0 * duration_us))
    if grid.step > step_limit * (1.0 + 1e-12):
        raise ResolutionError(
            f"quadrature step {grid.step} MHz too coarse (limit {step_limit:.4g} MHz)"
        )
    deltas = grid.detunings
    f_baseband = deltas - params.delta_d  # component at f sits at Delta = delta_d + f
    spec = dtft(pulse, f_baseband)
    s_us = np.abs(spec.amps / NS_PER_US) ** 2  # |S|^2 in us^2
    t_eff_us = float(pulse.dt * np.sum(w_re**2) / peak**2) / NS_PER_US
    kern = _kernel(TWO_PI * deltas, params.chi_angular, params.kappa_angular)
    ka = params.kappa_angular
    return float(np.sum(kern * ka * amp_cal**2 * s_us / t_eff_us * grid.step))


def excited_population(gamma: float, t2: float, tau: float) -> float:
    """P_e = exp(-(gamma + 1/t2) * tau); gamma in 1/us, t2 and tau in us."""
    if tau < 0:
        raise ValidationError(f"tau must be >= 0, got {tau}")
    if t2 <= 0:
        raise ValidationError(f"t2 must be > 0, got {t2}")
    if gamma < 0:
        raise ValidationError(f"gamma must be >= 0, got {gamma}")
    return float(np.exp(-(gamma + 1.0 / t2) * tau))


@dataclass(frozen=True)
class DephasingMap:
    """P_e and Stark-phase matrices over an amplitude x detuning grid."""

    amps: np.ndarray        # normalized amplitudes
    detunings: np.ndarray   # MHz
    pe: np.ndarray          # amps x detunings
    theta0: np.ndarray      # radians, amps x detunings
    drag_enabled: bool

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.float64)
        dets = np.ascontiguousarray(self.detunings, dtype=np.float64)
        pe = np.ascontiguousarray(self.pe, dtype=np.float64)
        theta0 = np.ascontiguousarray(self.theta0, dtype=np.float64)
        for name, val in (("amps", amps), ("detunings", dets), ("pe", pe), ("theta0", theta0)):
            object.__setattr__(self, name, val)
        if pe.shape != (amps.size, dets.size) or theta0.shape != pe.shape:
            raise ValidationError("matrix dimensions must match the amplitude/detuning axes")
        if np.any((pe < 0) | (pe > 1)):
            raise ValidationError("all P_e values must lie in [0, 1]")


def dephasing_map(
    params: DispersiveParams,
    pulse_spec: EnvelopeSpec,
    amps,
    detunings,
    drag: bool,
    amp_cal: float,
) -> DephasingMap:
    """Compute the P_e / theta0 map over amplitude and carrier detuning.

    Per detuning the probe pulse is rebuilt; with DRAG on, the notch is set
    to -delta_d so it sits exactly on the resonator (which is why zero
    detuning is rejected when DRAG is enabled).  P_e uses the steady-state
    spectral rate with tau = the pulse duration; theta0 is the Stark phase
    integral over the simulated trajectory plus the ring-down window.

    Both Gamma' and theta0 scale exactly quadratically with the drive
    amplitude (the cavity equations are linear), so the base quantities are
    evaluated once per detuning at unit amplitude and scaled; the result is
    identical to cell-by-cell evaluation and deterministic regardless of
    evaluation order.
    """
    amps = np.asarray(amps, dtype=np.float64)
    dets = np.asarray(detunings, dtype=np.float64)
    if drag and np.any(dets == 0.0):
        raise UndefinedNotchError("zero detuning is not allowed with DRAG enabled")
    unit_spec = replace(pulse_spec, amplitude=1.0)
    envelope = sample_envelope(unit_spec)
    derivative = envelope_derivative(unit_spec)
    tau_us = unit_spec.total_duration / NS_PER_US

    rate_base = np.empty(dets.size)
    theta_base = np.empty(dets.size)
    for j, det in enumerate(dets):
        p = replace(params, delta_d=float(det))
        if drag:
            pulse = apply_drag(envelope, derivative, DragParams(notch_freq=-float(det)))
        else:
            pulse = envelope
        rate_base[j] = spectral_rate(p, pulse, amp_cal)
        traj = simulate_cavity(p, pulse, amp_cal, ringdown=default_ringdown_ns(p))
        _, theta_base[j] = coherence_integrals(traj)

    scale = amps**2
    gamma = np.outer(scale, rate_base)
    pe = np.exp(-(gamma + 1.0 / params.t2) * tau_us)
    theta0 = np.outer(scale, theta_base)
    return DephasingMap(amps=amps, detunings=dets, pe=pe, theta0=theta0, drag_enabled=drag)

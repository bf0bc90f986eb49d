"""Acceptance criteria A1-A9 as callable checks.

Each criterion returns (passed, detail).  The same registry backs the
pytest acceptance suite and the CLI ``selftest`` command.  Tolerances are
pinned here; none are configurable.
"""
from __future__ import annotations

import os
import tempfile
import time
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import config as cfg
from .crosstalk import crosstalk_matrix, select_notches
from .dephasing import dephasing_map, monochromatic_rate, spectral_rate
from .dispersive import (
    DispersiveParams,
    drive_strength,
    fit_s21,
    s21_response,
    simulate_cavity,
    snr_proxy,
    steady_state_alpha,
)
from .fileio import map_csv, scan_csv
from .presets import PRESETS
from .ramsey import (
    beat_frequency,
    effective_decay_constant,
    fit_decay,
    fit_sinusoid,
    scan_plateau,
)
from .spectrum import notch_depth, parseval_check
from .waveform import (
    DragParams,
    EnvelopeSpec,
    apply_drag,
    envelope_derivative,
    sample_envelope,
)

NS_PER_US = 1e3

_REF_PARAMS = DispersiveParams(kappa=2.2, chi=1.05, delta_d=0.0, t2=18.0)

#: 2-us-plateau pulse used for the broadened-vs-monochromatic rate check.  The
#: edges are 800 ns so the pulse actually realizes the narrow-spectrum
#: premise of the check: with fast (ns-scale) edges the pulse carries real
#: broadband sidelobe power onto the resonator -- the crosstalk effect
#: itself -- and the two expressions legitimately differ at detunings of a
#: few MHz and beyond.
_NARROWBAND = EnvelopeSpec(
    amplitude=1.0, rise_time=800.0, plateau=2000.0, fall_time=800.0, sample_dt=1.0
)


def _check_a1():
    worst = -np.inf
    details = []
    for name in ("fig1c-200ns", "fig1c-2us"):
        preset = PRESETS["spectrum"][name]
        env = cfg.build_envelope(preset["envelope"])
        drag = cfg.build_drag(preset["drag"])
        plain = sample_envelope(env)
        dragged = apply_drag(plain, envelope_derivative(env), drag)
        depth = notch_depth(plain, dragged, drag.notch_freq)
        details.append(f"{name}: {depth:.1f} dB")
        worst = max(worst, depth)
    return worst <= -40.0, "; ".join(details) + " (required <= -40 dB)"


def _check_a2():
    pulse = sample_envelope(_NARROWBAND)
    worst = 0.0
    details = []
    for dd in (1.0, 3.0, 10.0):
        params = replace(_REF_PARAMS, delta_d=dd)
        eps = drive_strength(params, 1.0, _NARROWBAND.amplitude)
        gamma_mono = monochromatic_rate(params, abs(eps))
        gamma_spec = spectral_rate(params, pulse, 1.0)
        dev = abs(gamma_spec / gamma_mono - 1.0)
        worst = max(worst, dev)
        details.append(f"dd={dd:g}: {dev * 100:.2f}%")
    return worst <= 0.05, "; ".join(details) + " (required <= 5%)"


def _check_a3():
    worst_id = 0.0
    for dd in (-5.0, -1.0, 0.0, 3.0, 10.0):
        for amp in (0.02, 0.05, 0.1, 0.2, 0.5):
            params = replace(_REF_PARAMS, delta_d=dd)
            eps = drive_strength(params, 1.0, amp)
            ag, ae = steady_state_alpha(params, eps)
            lhs = 2.0 * params.chi_angular * np.imag(ag * np.conj(ae))
            rhs = monochromatic_rate(params, abs(eps))
            worst_id = max(worst_id, abs(lhs / rhs - 1.0))
    # time-domain endpoint at t = 10/kappa (kappa in ordinary MHz)
    params = replace(_REF_PARAMS, delta_d=1.0)
    t_eval = 10.0 / params.kappa * NS_PER_US
    env = EnvelopeSpec(
        amplitude=0.2, rise_time=0.0, plateau=t_eval + 60.0, fall_time=0.0, sample_dt=2.0
    )
    traj = simulate_cavity(params, sample_envelope(env), 1.0, ringdown=0.0)
    idx = int(np.searchsorted(traj.times, t_eval))
    ag_ss, ae_ss = steady_state_alpha(params, drive_strength(params, 1.0, env.amplitude))
    dev_g = abs(traj.alpha_g[idx] - ag_ss) / abs(ag_ss)
    dev_e = abs(traj.alpha_e[idx] - ae_ss) / abs(ae_ss)
    worst_td = max(dev_g, dev_e)
    ok = worst_id <= 1e-12 and worst_td <= 1e-3
    return ok, (
        f"identity dev {worst_id:.2e} (<= 1e-12); endpoint dev {worst_td:.2e} (<= 1e-3)"
    )


def _fig2_scans():
    preset = PRESETS["ramsey"]["fig2"]
    params = cfg.build_params(preset["params"])
    env = cfg.build_envelope(preset["envelope"])
    t = preset["taus"]
    taus = np.arange(t["start"], t["stop"], t["step"])
    cal = preset["amp_cal"]
    plain = scan_plateau(params, env, taus, drag=False, amp_cal=cal)
    dragged = scan_plateau(params, env, taus, drag=True, amp_cal=cal)
    return params, plain, dragged


def _check_a4():
    params, plain, dragged = _fig2_scans()
    detuning = abs(params.delta_d)
    freq = beat_frequency(plain)
    freq_ok = abs(freq - detuning) / detuning <= 0.10
    # modulation depth over one beat period (100 ns), past the cavity fill
    period = NS_PER_US / detuning
    lo, hi = 2.0 * period, 3.0 * period
    win = (plain.taus >= lo) & (plain.taus <= hi)

    def depth(scan):
        c = scan.contrasts[win]
        return (c.max() - c.min()) / c.mean()

    ratio = depth(plain) / depth(dragged)
    t2_drag = fit_decay(dragged.taus, dragged.contrasts)
    eff_plain = effective_decay_constant(plain.taus, plain.contrasts)
    ok = freq_ok and ratio >= 5.0 and t2_drag > eff_plain
    return ok, (
        f"beat {freq:.2f} MHz vs {detuning:g} (<=10%); depth ratio {ratio:.1f} (>=5); "
        f"T2eff(drag) {t2_drag:.3f} us > no-DRAG 1/e constant {eff_plain:.3f} us"
    )


def _fig3_maps():
    preset = PRESETS["dephasing-map"]["fig3"]
    params = cfg.build_params(preset["params"])
    env = cfg.build_envelope(preset["envelope"])
    a = preset["amps"]
    d = preset["detunings"]
    amps = np.linspace(a["start"], a["stop"], a["count"])
    dets = np.linspace(d["start"], d["stop"], d["count"])
    cal = preset["amp_cal"]
    map_plain = dephasing_map(params, env, amps, dets, drag=False, amp_cal=cal)
    dets_drag = dets[dets != 0.0]
    map_drag = dephasing_map(params, env, amps, dets_drag, drag=True, amp_cal=cal)
    return params, map_plain, map_drag


def _check_a5():
    params, map_plain, map_drag = _fig3_maps()
    # (1) minima of the no-DRAG row sit near +-chi.  At the reference
    # parameters chi < kappa/2, so the Lorentzian-product peak is single and
    # centered between the +-chi resonances; "near" therefore means within
    # half a linewidth (or one grid step) of the closer resonance.
    i_mid = map_plain.amps.size // 2
    row = map_plain.pe[i_mid]
    d_argmin = map_plain.detunings[int(np.argmin(row))]
    grid_step = float(np.diff(map_plain.detunings).min())
    near = min(abs(d_argmin - params.chi), abs(d_argmin + params.chi))
    near_ok = near <= max(params.kappa / 2.0, grid_step)
    # (2) DRAG does not hurt at |detuning| >= 5 MHz on >= 95% of points
    sel = np.abs(map_drag.detunings) >= 5.0
    cols_plain = np.isin(map_plain.detunings, map_drag.detunings[sel])
    frac = float(np.mean(map_drag.pe[:, sel] >= map_plain.pe[:, cols_plain]))
    # (3) zero-detuning column absent from the DRAG map
    no_zero = not np.any(map_drag.detunings == 0.0)
    ok = near_ok and frac >= 0.95 and no_zero
    return ok, (
        f"argmin at {d_argmin:+.1f} MHz, {near:.2f} MHz from +-chi "
        f"(<= {max(params.kappa / 2.0, grid_step):.2f}); drag>=plain at "
        f"{frac * 100:.1f}% (>=95%); zero column absent: {no_zero}"
    )


def _check_a6():
    freqs = np.arange(-8.0, 8.0, 0.02)
    fit = fit_s21(freqs, s21_response(_REF_PARAMS, freqs, "g"), s21_response(_REF_PARAMS, freqs, "e"))
    s21_ok = abs(fit.kappa / 2.2 - 1.0) <= 0.01 and abs(fit.two_chi / 2.1 - 1.0) <= 0.01
    thetas = 2.0 * np.pi * np.arange(16) / 16
    c, th0, off = fit_sinusoid(thetas, 0.3 * np.sin(thetas + 0.7) + 0.5)
    sin_ok = abs(c - 0.3) <= 1e-12 and abs(th0 - 0.7) <= 1e-12 and abs(off - 0.5) <= 1e-12
    taus = np.arange(50.0, 2050.0, 50.0)
    t2 = fit_decay(taus, 0.5 * np.exp(-taus / NS_PER_US / 1.41))
    decay_ok = abs(t2 / 1.41 - 1.0) <= 0.01
    ok = s21_ok and sin_ok and decay_ok
    return ok, (
        f"fit_s21 kappa={fit.kappa:.4f} 2chi={fit.two_chi:.4f} (<=1%); "
        f"fit_sinusoid exact: {sin_ok}; fit_decay T2={t2:.4f} us (<=1%)"
    )


def _check_a7():
    params = _REF_PARAMS  # resonant readout: delta_d = 0
    env = EnvelopeSpec(amplitude=1.0, rise_time=5.0, plateau=2000.0, fall_time=5.0, sample_dt=0.5)
    envelope = sample_envelope(env)
    derivative = envelope_derivative(env)
    ref = snr_proxy(simulate_cavity(params, envelope, 1.0, ringdown=2000.0))
    worst = 0.0
    for notch in (13.0, 25.0, 50.0, 100.0, 150.0, 201.0):
        dragged = apply_drag(envelope, derivative, DragParams(notch_freq=notch))
        val = snr_proxy(simulate_cavity(params, dragged, 1.0, ringdown=2000.0))
        worst = max(worst, abs(val / ref - 1.0))
    return worst <= 0.05, f"worst snr_proxy change {worst * 100:.3f}% over 13-201 MHz (<= 5%)"


def _check_a8():
    preset = PRESETS["crosstalk"]["plan-2res"]
    plan = cfg.build_plan(preset["plan"])
    cal = preset["amp_cal"]
    baseline = crosstalk_matrix(plan, cal)
    notched_plan, report = select_notches(plan, cal)
    off = ~np.eye(len(plan.resonators), dtype=bool)
    supp = report.suppression_db[off]
    supp_ok = bool(np.all(supp >= 13.0))
    # determinism: identical plans give bit-identical reports
    again = crosstalk_matrix(notched_plan, cal)
    det_ok = np.array_equal(report.gamma, again.gamma)
    # frame invariance: shift every absolute frequency by a constant
    shift = 137.0
    shifted = replace(
        plan,
        resonators=tuple(replace(r, f_r=r.f_r + shift) for r in plan.resonators),
        pulses=tuple(replace(p, f_d=p.f_d + shift) for p in plan.pulses),
    )
    base_shift = crosstalk_matrix(shifted, cal)
    rel = np.abs(base_shift.gamma - baseline.gamma) / np.maximum(baseline.gamma, 1e-300)
    frame_ok = bool(np.all(rel <= 1e-12))
    ok = supp_ok and det_ok and frame_ok
    return ok, (
        f"off-diagonal suppression {supp.min():.1f} dB (>= 13); deterministic: {det_ok}; "
        f"frame-invariant to {rel.max():.1e} (<= 1e-12)"
    )


def _csv_bytes(writer, obj) -> bytes:
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "out.csv")
        writer(path, obj)
        with open(path, "rb") as fh:
            return fh.read()


def _check_a9():
    # Parseval at module defaults
    env = cfg.build_envelope(PRESETS["waveform"]["fig1b"]["envelope"])
    fsum, tsum = parseval_check(sample_envelope(env))
    parseval_dev = abs(fsum / tsum - 1.0)
    # RK4 endpoint scales as O(dt^4) under halving
    params = replace(_REF_PARAMS, delta_d=3.0)
    ends = []
    for dt in (0.4, 0.2, 0.1):
        e = EnvelopeSpec(amplitude=0.5, rise_time=8.0, plateau=400.0, fall_time=8.0, sample_dt=dt)
        traj = simulate_cavity(params, sample_envelope(e), 1.0, ringdown=100.0)
        ends.append(traj.alpha_g[-1])
    ratio = abs(ends[0] - ends[1]) / abs(ends[1] - ends[2])
    order_ok = ratio >= 8.0  # ideal 16 for a 4th-order scheme
    # byte-identical outputs across repeated runs
    amps = np.linspace(0.0, 1.0, 4)
    dets = np.linspace(-8.0, 8.0, 5)
    env_small = replace(env, sample_dt=0.5)

    def one_map():
        return dephasing_map(_REF_PARAMS, env_small, amps, dets, drag=False, amp_cal=2.0)

    def one_scan():
        return scan_plateau(
            replace(_REF_PARAMS, delta_d=-10.0),
            replace(env_small, plateau=0.0),
            np.arange(20.0, 120.0, 20.0),
            drag=True,
            amp_cal=5.0,
            noise_sigma=0.01,
            seed=42,
        )

    bytes_ok = _csv_bytes(map_csv, one_map()) == _csv_bytes(map_csv, one_map()) and _csv_bytes(
        scan_csv, one_scan()
    ) == _csv_bytes(scan_csv, one_scan())
    ok = parseval_dev <= 1e-3 and order_ok and bytes_ok
    return ok, (
        f"Parseval dev {parseval_dev:.2e} (<= 1e-3); dt-halving ratio {ratio:.1f} (>= 8); "
        f"byte-identical reruns: {bytes_ok}"
    )


@dataclass(frozen=True)
class Criterion:
    cid: str
    title: str
    func: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    title: str
    passed: bool
    detail: str
    seconds: float


CRITERIA: tuple[Criterion, ...] = (
    Criterion("A1", "50-MHz notch depth for the fig1c presets", _check_a1),
    Criterion("A2", "spectral rate matches the monochromatic rate for a narrowband pulse", _check_a2),
    Criterion("A3", "steady-state dephasing identity and simulator endpoint", _check_a3),
    Criterion("A4", "Ramsey beating frequency, depth suppression, decay ordering", _check_a4),
    Criterion("A5", "dephasing-map structure and DRAG dominance", _check_a5),
    Criterion("A6", "fit round-trips: S21, sinusoid, decay", _check_a6),
    Criterion("A7", "readout neutrality of the notch over 13-201 MHz", _check_a7),
    Criterion("A8", "two-resonator crosstalk suppression, determinism, frame invariance", _check_a8),
    Criterion("A9", "numerical hygiene: Parseval, RK4 order, byte-stable outputs", _check_a9),
)


def run_criterion(criterion: Criterion) -> CriterionResult:
    start = time.perf_counter()
    passed, detail = criterion.func()
    return CriterionResult(
        cid=criterion.cid,
        title=criterion.title,
        passed=passed,
        detail=detail,
        seconds=time.perf_counter() - start,
    )


def run_all() -> list[CriterionResult]:
    return [run_criterion(c) for c in CRITERIA]

import numpy as np
import pytest
from dataclasses import replace

from dragprobe import (
    DispersiveParams,
    EnvelopeSpec,
    FitError,
    ResolutionError,
    ValidationError,
    coherence_integrals,
    drive_strength,
    fit_s21,
    s21_response,
    sample_envelope,
    simulate_cavity,
    snr_proxy,
    steady_state_alpha,
)

TWO_PI = 2.0 * np.pi


def test_steady_state_zero_drive(ref_params):
    assert steady_state_alpha(ref_params, 0.0) == (0.0, 0.0)


def test_steady_state_symmetric_resonance():
    p = DispersiveParams(kappa=2.2, chi=0.0, delta_d=0.0, t2=18.0)
    eps = drive_strength(p, 1.0, 0.3)
    ag, ae = steady_state_alpha(p, eps)
    expected = eps / (p.kappa_angular / 2.0)
    assert ag == pytest.approx(expected, rel=1e-14)
    assert ae == ag


def test_steady_state_reference_values(ref_params):
    # independent scalar evaluation of the closed form, frozen:
    # eps = i*sqrt(2*pi*2.2)*0.1; alpha_s = eps/(i*(0 -+ 2*pi*1.05) + pi*2.2)
    eps = drive_strength(ref_params, 1.0, 0.1)
    ag, ae = steady_state_alpha(ref_params, eps)
    assert ag == pytest.approx(-0.02686760556254425 + 0.028147015351236836j, rel=1e-13)
    assert ae == pytest.approx(+0.02686760556254425 + 0.028147015351236836j, rel=1e-13)


def test_zero_drive_trajectory_is_zero(ref_params):
    env = EnvelopeSpec(amplitude=0.0, rise_time=5.0, plateau=50.0, fall_time=5.0, sample_dt=0.5)
    traj = simulate_cavity(ref_params, sample_envelope(env), 1.0, ringdown=50.0)
    assert np.all(traj.alpha_g == 0.0)
    assert np.all(traj.alpha_e == 0.0)


def test_constant_drive_reaches_steady_state(ref_params):
    # t = 10/kappa with kappa in ordinary MHz: 4545 ns of constant drive
    p = replace(ref_params, delta_d=1.0)
    t_eval = 10.0 / p.kappa * 1e3
    env = EnvelopeSpec(amplitude=0.2, rise_time=0.0, plateau=t_eval + 40.0, fall_time=0.0, sample_dt=2.0)
    traj = simulate_cavity(p, sample_envelope(env), 1.0)
    idx = int(np.searchsorted(traj.times, t_eval))
    ag, ae = steady_state_alpha(p, drive_strength(p, 1.0, env.amplitude))
    assert abs(traj.alpha_g[idx] - ag) / abs(ag) <= 1e-3
    assert abs(traj.alpha_e[idx] - ae) / abs(ae) <= 1e-3


def test_rk4_fourth_order_convergence(ref_params):
    p = replace(ref_params, delta_d=3.0)
    ends = []
    for dt in (0.4, 0.2, 0.1):
        env = EnvelopeSpec(amplitude=0.5, rise_time=8.0, plateau=300.0, fall_time=8.0, sample_dt=dt)
        traj = simulate_cavity(p, sample_envelope(env), 1.0, ringdown=80.0)
        ends.append(traj.alpha_e[-1])
    ratio = abs(ends[0] - ends[1]) / abs(ends[1] - ends[2])
    assert ratio >= 8.0  # ideal 16 for O(dt^4)


def test_cavity_linearity_in_drive(ref_params):
    p = replace(ref_params, delta_d=2.0)
    env = EnvelopeSpec(amplitude=0.25, rise_time=5.0, plateau=100.0, fall_time=5.0, sample_dt=0.5)
    t1 = simulate_cavity(p, sample_envelope(env), amp_cal=1.0, ringdown=100.0)
    t2 = simulate_cavity(p, sample_envelope(env), amp_cal=2.0, ringdown=100.0)
    np.testing.assert_allclose(t2.alpha_g, 2.0 * t1.alpha_g, rtol=1e-12, atol=1e-300)
    np.testing.assert_allclose(t2.alpha_e, 2.0 * t1.alpha_e, rtol=1e-12, atol=1e-300)


def test_photon_decay_after_drive_off(ref_params):
    env = EnvelopeSpec(amplitude=0.5, rise_time=5.0, plateau=400.0, fall_time=5.0, sample_dt=0.5)
    traj = simulate_cavity(ref_params, sample_envelope(env), 1.0, ringdown=600.0)
    t_off = env.total_duration
    sel = traj.times >= t_off + 1.0
    t_rel_us = (traj.times[sel] - traj.times[sel][0]) / 1e3
    n = np.abs(traj.alpha_g[sel]) ** 2
    expected = n[0] * np.exp(-TWO_PI * ref_params.kappa * t_rel_us)
    np.testing.assert_allclose(n, expected, rtol=1e-6)


def test_resolution_error_for_coarse_step():
    p = DispersiveParams(kappa=2.2, chi=1.05, delta_d=100.0, t2=18.0)
    env = EnvelopeSpec(amplitude=0.5, rise_time=10.0, plateau=100.0, fall_time=10.0, sample_dt=1.0)
    with pytest.raises(ResolutionError):
        simulate_cavity(p, sample_envelope(env), 1.0)


def test_snr_proxy_trivial_zeros(ref_params):
    env = EnvelopeSpec(amplitude=0.0, rise_time=5.0, plateau=50.0, fall_time=5.0, sample_dt=0.5)
    traj = simulate_cavity(ref_params, sample_envelope(env), 1.0, ringdown=50.0)
    assert snr_proxy(traj) == 0.0
    p0 = DispersiveParams(kappa=2.2, chi=0.0, delta_d=0.0, t2=18.0)
    env = replace(env, amplitude=0.5)
    traj = simulate_cavity(p0, sample_envelope(env), 1.0, ringdown=50.0)
    assert snr_proxy(traj) == pytest.approx(0.0, abs=1e-30)


def test_coherence_integrals_match_steady_state_rate(ref_params):
    # on a long plateau, dD/dt equals the steady-state dephasing rate
    p = replace(ref_params, delta_d=1.0)
    long_env = EnvelopeSpec(amplitude=0.1, rise_time=0.0, plateau=3000.0, fall_time=0.0, sample_dt=2.0)
    short_env = replace(long_env, plateau=2000.0)
    d_long, _ = coherence_integrals(simulate_cavity(p, sample_envelope(long_env), 1.0))
    d_short, _ = coherence_integrals(simulate_cavity(p, sample_envelope(short_env), 1.0))
    ag, ae = steady_state_alpha(p, drive_strength(p, 1.0, long_env.amplitude))
    rate = 2.0 * p.chi_angular * np.imag(ag * np.conj(ae))
    assert (d_long - d_short) / 1.0 == pytest.approx(rate, rel=1e-4)


def test_s21_limits_and_dip_separation(ref_params):
    freqs = np.arange(-50.0, 50.0, 0.01)
    g = s21_response(ref_params, freqs, "g")
    e = s21_response(ref_params, freqs, "e")
    assert abs(g[0]) > 0.99  # far off resonance -> unity transmission
    f_g = freqs[np.argmin(np.abs(g))]
    f_e = freqs[np.argmin(np.abs(e))]
    assert np.min(np.abs(g)) < 1e-2  # full dip for the symmetric notch
    assert f_e - f_g == pytest.approx(2.0 * ref_params.chi, abs=0.02)
    with pytest.raises(ValidationError):
        s21_response(ref_params, freqs, "x")


def test_fit_s21_reference_roundtrip(ref_params):
    freqs = np.arange(-8.0, 8.0, 0.02)
    fit = fit_s21(
        freqs,
        s21_response(ref_params, freqs, "g"),
        s21_response(ref_params, freqs, "e"),
    )
    assert fit.kappa == pytest.approx(2.2, rel=1e-2)
    assert fit.two_chi == pytest.approx(2.1, rel=1e-2)
    assert fit.residual < 1e-12


@pytest.mark.parametrize("kappa,two_chi", [(0.5, 0.5), (0.5, 10.0), (10.0, 0.5), (10.0, 10.0), (3.3, 4.4)])
def test_fit_s21_identity_roundtrip(kappa, two_chi):
    p = DispersiveParams(kappa=kappa, chi=two_chi / 2.0, delta_d=0.0, t2=18.0)
    span = 4.0 * kappa + two_chi
    freqs = np.arange(-span, span, min(kappa, two_chi) / 25.0)
    fit = fit_s21(freqs, s21_response(p, freqs, "g"), s21_response(p, freqs, "e"))
    assert fit.kappa == pytest.approx(kappa, rel=1e-6)
    assert fit.two_chi == pytest.approx(two_chi, rel=1e-6)


def test_fit_s21_with_noise_seeded(ref_params):
    rng = np.random.default_rng(1234)
    freqs = np.arange(-8.0, 8.0, 0.02)
    g = s21_response(ref_params, freqs, "g")
    e = s21_response(ref_params, freqs, "e")
    noise = lambda: rng.normal(0, 0.01, freqs.size) + 1j * rng.normal(0, 0.01, freqs.size)
    fit = fit_s21(freqs, g + noise(), e + noise())
    assert fit.kappa == pytest.approx(2.2, rel=5e-2)
    assert fit.two_chi == pytest.approx(2.1, rel=5e-2)


def test_fit_s21_no_dip_error(ref_params):
    freqs = np.arange(30.0, 40.0, 0.1)  # far from both dips
    g = s21_response(ref_params, freqs, "g")
    e = s21_response(ref_params, freqs, "e")
    with pytest.raises(FitError):
        fit_s21(freqs, g, e)


def test_params_validation():
    with pytest.raises(ValidationError):
        DispersiveParams(kappa=0.0, chi=1.0, delta_d=0.0, t2=18.0)
    with pytest.raises(ValidationError):
        DispersiveParams(kappa=2.2, chi=1.0, delta_d=0.0, t2=0.0)

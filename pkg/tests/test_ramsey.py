import numpy as np
import pytest

from dragprobe import (
    DispersiveParams,
    EnvelopeSpec,
    FitError,
    UndefinedNotchError,
    ValidationError,
    beat_frequency,
    effective_decay_constant,
    fit_decay,
    fit_sinusoid,
    sample_envelope,
    scan_plateau,
    simulate_ramsey_point,
)
from dragprobe.dispersive import default_ringdown_ns
from dragprobe.ramsey import T2_EFF_CAP_US


def _zero_pulse(dt=0.5, plateau=50.0):
    env = EnvelopeSpec(amplitude=0.0, rise_time=5.0, plateau=plateau, fall_time=5.0, sample_dt=dt)
    return env, sample_envelope(env)


def test_unperturbed_ramsey_full_contrast():
    params = DispersiveParams(kappa=2.2, chi=1.05, delta_d=0.0, t2=1e12)
    env, pulse = _zero_pulse()
    sweep = simulate_ramsey_point(params, pulse, 1.0, n_theta=16)
    c, theta0, offset = fit_sinusoid(sweep.thetas, sweep.signal)
    assert c == pytest.approx(0.5, abs=1e-9)
    assert theta0 == pytest.approx(0.0, abs=1e-9)
    assert offset == pytest.approx(0.5, abs=1e-12)
    assert 2.0 * c == pytest.approx(1.0, abs=1e-8)


def test_free_decay_only(ref_params):
    env, pulse = _zero_pulse()
    sweep = simulate_ramsey_point(ref_params, pulse, 1.0, n_theta=16)
    c, _, _ = fit_sinusoid(sweep.thetas, sweep.signal)
    t_tot_us = (pulse.duration + default_ringdown_ns(ref_params)) / 1e3
    assert c == pytest.approx(np.exp(-t_tot_us / ref_params.t2) / 2.0, rel=1e-6)


def test_fit_sinusoid_exact_recovery():
    thetas = 2.0 * np.pi * np.arange(16) / 16
    signal = 0.3 * np.sin(thetas + 0.7) + 0.5
    c, theta0, offset = fit_sinusoid(thetas, signal)
    assert c == pytest.approx(0.3, abs=1e-12)
    assert theta0 == pytest.approx(0.7, abs=1e-12)
    assert offset == pytest.approx(0.5, abs=1e-12)


def test_fit_sinusoid_constant_input():
    thetas = 2.0 * np.pi * np.arange(12) / 12
    c, _, offset = fit_sinusoid(thetas, np.full(12, 0.37))
    assert c == pytest.approx(0.0, abs=1e-12)
    assert offset == pytest.approx(0.37, abs=1e-12)


def test_fit_sinusoid_rank_deficient():
    with pytest.raises(FitError):
        fit_sinusoid(np.zeros(8), np.ones(8))


def test_fit_sinusoid_noisy_seeded():
    rng = np.random.default_rng(99)
    n = 64
    thetas = 2.0 * np.pi * np.arange(n) / n
    sigma = 0.01
    signal = 0.3 * np.sin(thetas + 0.7) + 0.5 + rng.normal(0, sigma, n)
    c, theta0, _ = fit_sinusoid(thetas, signal)
    bound = 3.0 * sigma / np.sqrt(n)
    assert abs(c - 0.3) <= bound
    assert abs(theta0 - 0.7) <= bound / 0.3


def test_simulate_ramsey_validation(ref_params):
    env, pulse = _zero_pulse()
    with pytest.raises(ValidationError):
        simulate_ramsey_point(ref_params, pulse, 1.0, n_theta=4)
    with pytest.raises(ValidationError):
        simulate_ramsey_point(ref_params, pulse, 1.0, noise_sigma=-0.1)


def test_noise_is_seed_deterministic(ref_params):
    env, pulse = _zero_pulse()
    s1 = simulate_ramsey_point(ref_params, pulse, 1.0, noise_sigma=0.02, seed=7)
    s2 = simulate_ramsey_point(ref_params, pulse, 1.0, noise_sigma=0.02, seed=7)
    s3 = simulate_ramsey_point(ref_params, pulse, 1.0, noise_sigma=0.02, seed=8)
    np.testing.assert_array_equal(s1.signal, s2.signal)
    assert not np.array_equal(s1.signal, s3.signal)


def test_scan_zero_amplitude_decays_smoothly(ref_params):
    env, _ = _zero_pulse()
    taus = np.arange(50.0, 2050.0, 100.0)
    scan = scan_plateau(ref_params, env, taus, drag=False, amp_cal=1.0)
    expected = np.exp(-scan.t_tot / 1e3 / ref_params.t2) / 2.0
    np.testing.assert_allclose(scan.contrasts, expected, rtol=1e-9)
    assert np.all(np.diff(scan.contrasts) < 0)  # monotone, no oscillation
    t2eff = fit_decay(scan.taus, scan.contrasts)
    assert t2eff == pytest.approx(ref_params.t2, rel=1e-6)


def test_pe_equals_two_c_mapping(ref_params):
    env, _ = _zero_pulse()
    taus = np.arange(100.0, 400.0, 100.0)
    scan = scan_plateau(ref_params, env, taus, drag=False, amp_cal=1.0)
    for point, t_tot in zip(scan.points, scan.t_tot):
        assert point.pe == pytest.approx(np.exp(-t_tot / 1e3 / ref_params.t2), rel=1e-6)


@pytest.fixture(scope="module")
def fig2_scans():
    params = DispersiveParams(kappa=2.2, chi=1.05, delta_d=-10.0, t2=18.0)
    env = EnvelopeSpec(amplitude=1.0, rise_time=5.0, plateau=0.0, fall_time=5.0, sample_dt=0.5)
    taus = np.arange(10.0, 1210.0, 10.0)
    plain = scan_plateau(params, env, taus, drag=False, amp_cal=26.0)
    dragged = scan_plateau(params, env, taus, drag=True, amp_cal=26.0)
    return params, plain, dragged


def test_beating_at_the_detuning_frequency(fig2_scans):
    params, plain, _ = fig2_scans
    freq = beat_frequency(plain)
    # the beat lines sit at |delta_d| -+ chi, so the dominant peak may be
    # offset from the bare detuning by up to chi
    assert abs(freq - abs(params.delta_d)) <= max(params.chi, 1.0)
    # contrast oscillates with period ~ 1/detuning (100 ns) within 10%
    assert abs(1e3 / freq - 100.0) / 100.0 <= 0.10 + params.chi / 10.0


def test_drag_suppresses_modulation_depth(fig2_scans):
    _, plain, dragged = fig2_scans
    win = (plain.taus >= 200.0) & (plain.taus <= 300.0)  # one beat period

    def depth(scan):
        c = scan.contrasts[win]
        return (c.max() - c.min()) / c.mean()

    assert depth(plain) / depth(dragged) >= 5.0


def test_drag_fit_exceeds_nodrag_effective_decay(fig2_scans):
    _, plain, dragged = fig2_scans
    t2_drag = fit_decay(dragged.taus, dragged.contrasts)
    eff_plain = effective_decay_constant(plain.taus, plain.contrasts)
    assert t2_drag > eff_plain


def test_scan_drag_requires_detuning(ref_params):
    env, _ = _zero_pulse()
    with pytest.raises(UndefinedNotchError):
        scan_plateau(ref_params, env, [100.0, 200.0], drag=True, amp_cal=1.0)


def test_fit_decay_roundtrip_reference_value():
    taus = np.arange(50.0, 2050.0, 50.0)
    contrasts = 0.5 * np.exp(-taus / 1e3 / 1.41)
    assert fit_decay(taus, contrasts) == pytest.approx(1.41, rel=1e-2)


def test_fit_decay_constant_input_capped():
    assert fit_decay([100.0, 200.0, 300.0], [0.4, 0.4, 0.4]) == T2_EFF_CAP_US


def test_fit_decay_two_points_exact():
    t2 = 0.8
    taus = np.array([100.0, 600.0])
    contrasts = 0.45 * np.exp(-taus / 1e3 / t2)
    assert fit_decay(taus, contrasts) == pytest.approx(t2, rel=1e-12)


def test_fit_decay_rejects_nonpositive():
    with pytest.raises(ValidationError):
        fit_decay([1.0, 2.0, 3.0], [0.5, 0.0, 0.1])


def test_effective_decay_constant_exponential_case():
    taus = np.arange(0.0, 5000.0, 10.0)
    contrasts = 0.5 * np.exp(-taus / 1e3 / 1.2)
    assert effective_decay_constant(taus, contrasts) == pytest.approx(1.2, rel=1e-2)
    assert effective_decay_constant(taus[:5], contrasts[:5]) == T2_EFF_CAP_US

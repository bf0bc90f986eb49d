"""Built-in run configurations for the figure-reproduction commands.

Hardware-pinned numbers: kappa/2pi = 2.2 MHz, 2chi/2pi = 2.1 MHz, T2 =
18 us, the 200-ns / 2-us plateaus, 10 ns of total rise+fall (5 ns per
edge), the 50-MHz demonstration notch, the +10 MHz probe detuning (probe
above the resonator, so delta_d = -10 MHz) and the 210-ns fixed
pseudo-pulse.  Everything else (drive amplitude, the amp_cal coefficient,
scan ranges, grid resolutions) is an illustrative desk-scale choice and is
documented here rather than taken from hardware.
"""

_FIG1_ENVELOPE_200NS = {
    "amplitude": 1.0,
    "rise_time": 5.0,
    "plateau": 200.0,
    "fall_time": 5.0,
    "sample_dt": 0.1,
}

_FIG1_ENVELOPE_2US = dict(_FIG1_ENVELOPE_200NS, plateau=2000.0)

_PAPER_PARAMS = {"kappa": 2.2, "chi": 1.05, "delta_d": 0.0, "t2": 18.0}

_PLAN_2RES = {
    "resonators": [
        {"id": "r1", "f_r": 7000.0, "kappa": 2.2, "chi": 1.05, "t2": 18.0},
        {"id": "r2", "f_r": 7050.0, "kappa": 2.2, "chi": 1.05, "t2": 18.0},
    ],
    "pulses": [
        {"target": "r1", "f_d": 7000.0, "envelope": dict(_FIG1_ENVELOPE_200NS, amplitude=0.5)},
        {"target": "r2", "f_d": 7050.0, "envelope": dict(_FIG1_ENVELOPE_200NS, amplitude=0.5)},
    ],
}

_PLAN_4RES = {
    "resonators": [
        {"id": "r1", "f_r": 6950.0, "kappa": 2.2, "chi": 1.05, "t2": 18.0},
        {"id": "r2", "f_r": 7010.0, "kappa": 1.8, "chi": 0.90, "t2": 22.0},
        {"id": "r3", "f_r": 7060.0, "kappa": 2.5, "chi": 1.20, "t2": 15.0},
        {"id": "r4", "f_r": 7200.0, "kappa": 2.0, "chi": 1.00, "t2": 20.0},
    ],
    "pulses": [
        {"target": "r1", "f_d": 6950.0, "envelope": dict(_FIG1_ENVELOPE_200NS, amplitude=0.5)},
        {"target": "r2", "f_d": 7010.0, "envelope": dict(_FIG1_ENVELOPE_200NS, amplitude=0.4)},
        {"target": "r3", "f_d": 7060.0, "envelope": dict(_FIG1_ENVELOPE_200NS, amplitude=0.6)},
        {"target": "r4", "f_d": 7200.0, "envelope": dict(_FIG1_ENVELOPE_200NS, amplitude=0.5)},
    ],
}

PRESETS: dict[str, dict[str, dict]] = {
    "waveform": {
        "fig1b": {
            "envelope": dict(_FIG1_ENVELOPE_200NS),
            "drag": {"notch_freq": 50.0, "enabled": True},
        },
    },
    "spectrum": {
        "fig1c-200ns": {
            "envelope": dict(_FIG1_ENVELOPE_200NS),
            "drag": {"notch_freq": 50.0, "enabled": True},
            "freqs": {"start": -100.0, "stop": 100.0, "step": 0.05},
            "depth_at": 50.0,
        },
        "fig1c-2us": {
            "envelope": dict(_FIG1_ENVELOPE_2US),
            "drag": {"notch_freq": 50.0, "enabled": True},
            "freqs": {"start": -100.0, "stop": 100.0, "step": 0.05},
            "depth_at": 50.0,
        },
    },
    "ramsey": {
        # probe 10 MHz above the target resonator -> delta_d = -10 MHz;
        # amp_cal tuned so the no-DRAG decay lands on the us scale
        "fig2": {
            "params": dict(_PAPER_PARAMS, delta_d=-10.0),
            "envelope": {
                "amplitude": 1.0,
                "rise_time": 5.0,
                "plateau": 0.0,
                "fall_time": 5.0,
                "sample_dt": 0.5,
            },
            "taus": {"start": 10.0, "stop": 1610.0, "step": 10.0},
            "amp_cal": 26.0,
            "n_theta": 32,
            "noise_sigma": 0.0,
        },
    },
    "dephasing-map": {
        "fig3": {
            "params": dict(_PAPER_PARAMS),
            "envelope": dict(_FIG1_ENVELOPE_200NS),
            "amps": {"start": 0.0, "stop": 1.0, "count": 21},
            "detunings": {"start": -20.0, "stop": 20.0, "count": 41},
            "amp_cal": 2.5,
        },
    },
    "crosstalk": {
        "plan-2res": {"amp_cal": 1.0, "plan": _PLAN_2RES},
        "plan-4res": {"amp_cal": 1.0, "plan": _PLAN_4RES},
    },
}

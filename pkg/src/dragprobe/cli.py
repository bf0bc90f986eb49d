"""Command-line entry point.

Usage: ``dragprobe <command> [--preset name] [--config file.json]
[--out dir] [--seed n] [--svg]``.  A config file is merged over the chosen
preset (file wins); unknown keys anywhere are errors.  Exit codes: 0
success, 2 validation, 3 numeric resolution, 4 IO.  Failures print one
machine-parsable line ``error:<code>:<detail>`` on stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import config as cfg
from .acceptance import run_all
from .crosstalk import crosstalk_matrix, select_notches
from .dephasing import dephasing_map
from .errors import ConfigError, DragprobeError, ResolutionError, ValidationError
from .fileio import (
    crosstalk_csv,
    crosstalk_report_dict,
    map_csv,
    scan_csv,
    spectrum_csv,
    waveform_csv,
    write_json,
)
from .presets import PRESETS
from .ramsey import beat_frequency, effective_decay_constant, fit_decay, scan_plateau
from .spectrum import dtft, dtft_at, notch_depth
from .svgplot import heatmap, line_plot
from .waveform import apply_drag, envelope_derivative, sample_envelope, waveform_energy

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOLUTION = 3
EXIT_IO = 4


def _resolve_config(command: str, preset: str | None, config_path: str | None) -> dict:
    data: dict = {}
    if preset is not None:
        presets = PRESETS.get(command, {})
        if preset not in presets:
            raise ConfigError(
                f"unknown preset {preset!r} for {command} (have {sorted(presets)})"
            )
        data = presets[preset]
    if config_path is not None:
        data = cfg.merge(data, cfg.load_json(config_path))
    if not data:
        raise ConfigError("no configuration given; use --preset and/or --config")
    return cfg.merge({}, data)  # deep copy; builders pop keys destructively


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _linspace_block(block, path):
    block = dict(block)
    start = cfg.number(cfg.take(block, "start"), f"{path}.start")
    stop = cfg.number(cfg.take(block, "stop"), f"{path}.stop")
    count = cfg.take(block, "count")
    cfg.ensure_empty(block, path)
    if not isinstance(count, int) or count < 2:
        raise ConfigError(f"{path}.count must be an integer >= 2")
    return np.linspace(start, stop, count)


def _arange_block(block, path):
    block = dict(block)
    start = cfg.number(cfg.take(block, "start"), f"{path}.start")
    stop = cfg.number(cfg.take(block, "stop"), f"{path}.stop")
    step = cfg.number(cfg.take(block, "step"), f"{path}.step")
    cfg.ensure_empty(block, path)
    if step <= 0 or stop <= start:
        raise ConfigError(f"{path} must have step > 0 and stop > start")
    return np.arange(start, stop, step)


def cmd_waveform(args) -> int:
    conf = _resolve_config("waveform", args.preset, args.config)
    env = cfg.build_envelope(cfg.take(conf, "envelope"))
    drag = cfg.build_drag(cfg.take(conf, "drag", None))
    cfg.ensure_empty(conf, "config")
    out = _outdir(args)
    plain = sample_envelope(env)
    waveform_csv(out / "waveform_plain.csv", plain)
    files = [out / "waveform_plain.csv"]
    energies = {"plain_ns": waveform_energy(plain)}
    if drag is not None and drag.enabled:
        dragged = apply_drag(plain, envelope_derivative(env), drag)
        waveform_csv(out / "waveform_drag.csv", dragged)
        files.append(out / "waveform_drag.csv")
        energies["drag_ns"] = waveform_energy(dragged)
        if args.svg:
            line_plot(
                out / "waveform.svg",
                [
                    (plain.times, plain.samples.real, "I (plain)"),
                    (dragged.times, dragged.samples.real, "I (drag)"),
                    (dragged.times, dragged.samples.imag, "Q (drag)"),
                ],
                "Probe envelope",
                "t (ns)",
                "amplitude",
            )
    elif args.svg:
        line_plot(
            out / "waveform.svg",
            [(plain.times, plain.samples.real, "I")],
            "Probe envelope",
            "t (ns)",
            "amplitude",
        )
    summary = " ".join(f"{k}={v:.6g}" for k, v in energies.items())
    print(f"waveform: wrote {len(files)} file(s) to {out}; energy {summary}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    conf = _resolve_config("spectrum", args.preset, args.config)
    env = cfg.build_envelope(cfg.take(conf, "envelope"))
    drag = cfg.build_drag(cfg.take(conf, "drag", None))
    freqs = _arange_block(cfg.take(conf, "freqs"), "freqs")
    depth_at = cfg.number(cfg.take(conf, "depth_at", 50.0), "depth_at")
    cfg.ensure_empty(conf, "config")
    out = _outdir(args)
    plain = sample_envelope(env)
    dragged = apply_drag(plain, envelope_derivative(env), drag) if drag and drag.enabled else plain
    ref = abs(dtft_at(plain, 0.0))
    grid_plain = dtft(plain, freqs)
    grid_drag = dtft(dragged, freqs)
    spectrum_csv(out / "spectrum_plain.csv", grid_plain, ref)
    spectrum_csv(out / "spectrum_drag.csv", grid_drag, abs(dtft_at(dragged, 0.0)))
    depth = 0.0 if dragged is plain else notch_depth(plain, dragged, depth_at)
    if args.svg:
        with np.errstate(divide="ignore"):
            db_p = 20 * np.log10(np.abs(grid_plain.amps) / ref)
            db_d = 20 * np.log10(np.abs(grid_drag.amps) / ref)
        line_plot(
            out / "spectrum.svg",
            [(freqs, db_p, "plain"), (freqs, db_d, "drag")],
            "Probe spectrum",
            "f (MHz)",
            "dB rel. DC",
        )
    print(f"spectrum: notch depth at {depth_at:g} MHz = {depth:.2f} dB; files in {out}")
    return EXIT_OK


def cmd_ramsey(args) -> int:
    conf = _resolve_config("ramsey", args.preset, args.config)
    params = cfg.build_params(cfg.take(conf, "params"))
    env = cfg.build_envelope(cfg.take(conf, "envelope"))
    taus = _arange_block(cfg.take(conf, "taus"), "taus")
    amp_cal = cfg.number(cfg.take(conf, "amp_cal"), "amp_cal")
    n_theta = cfg.take(conf, "n_theta", 32)
    noise_sigma = cfg.number(cfg.take(conf, "noise_sigma", 0.0), "noise_sigma")
    cfg.ensure_empty(conf, "config")
    out = _outdir(args)
    common = dict(amp_cal=amp_cal, noise_sigma=noise_sigma, seed=args.seed, n_theta=n_theta)
    plain = scan_plateau(params, env, taus, drag=False, **common)
    scan_csv(out / "scan_plain.csv", plain)
    try:
        beat = beat_frequency(plain)
    except ValidationError:
        beat = None  # scan too short/coarse for a beat estimate
    summary = {
        "detuning_mhz": params.delta_d,
        "seed": args.seed,
        "noise_sigma": noise_sigma,
        "t_tot_offset_ns": float(plain.t_tot[0] - plain.taus[0]),
        "t2_eff_plain_us": fit_decay(plain.taus, plain.contrasts),
        "effective_decay_plain_us": effective_decay_constant(plain.taus, plain.contrasts),
        "beat_freq_plain_mhz": beat,
    }
    series = [(plain.taus, plain.contrasts, "no DRAG")]
    if params.delta_d != 0.0:
        dragged = scan_plateau(params, env, taus, drag=True, **common)
        scan_csv(out / "scan_drag.csv", dragged)
        summary["t2_eff_drag_us"] = fit_decay(dragged.taus, dragged.contrasts)
        summary["effective_decay_drag_us"] = effective_decay_constant(
            dragged.taus, dragged.contrasts
        )
        series.append((dragged.taus, dragged.contrasts, "DRAG"))
    write_json(out / "ramsey_summary.json", summary)
    if args.svg:
        line_plot(out / "ramsey.svg", series, "Ramsey contrast vs plateau", "tau (ns)", "contrast")
    print(
        "ramsey: t2_eff_plain={t2_eff_plain_us:.4g} us, "
        "effective_decay_plain={effective_decay_plain_us:.4g} us".format(**summary)
        + (
            ", t2_eff_drag={t2_eff_drag_us:.4g} us".format(**summary)
            if "t2_eff_drag_us" in summary
            else ""
        )
    )
    return EXIT_OK


def cmd_dephasing_map(args) -> int:
    conf = _resolve_config("dephasing-map", args.preset, args.config)
    params = cfg.build_params(cfg.take(conf, "params"))
    env = cfg.build_envelope(cfg.take(conf, "envelope"))
    amps = _linspace_block(cfg.take(conf, "amps"), "amps")
    dets = _linspace_block(cfg.take(conf, "detunings"), "detunings")
    amp_cal = cfg.number(cfg.take(conf, "amp_cal"), "amp_cal")
    cfg.ensure_empty(conf, "config")
    out = _outdir(args)
    map_plain = dephasing_map(params, env, amps, dets, drag=False, amp_cal=amp_cal)
    dets_drag = dets[dets != 0.0]
    skipped = dets[dets == 0.0]
    for det in skipped:
        print(
            f"warning:zero_detuning_skipped:detuning {det:g} MHz omitted from the DRAG map",
            file=sys.stderr,
        )
    if dets_drag.size == 0:
        raise ConfigError("detuning grid contains only zero; DRAG map would be empty")
    map_drag = dephasing_map(params, env, amps, dets_drag, drag=True, amp_cal=amp_cal)
    map_csv(out / "map_plain.csv", map_plain)
    map_csv(out / "map_drag.csv", map_drag)
    meta = {
        "params": {
            "kappa_mhz": params.kappa,
            "chi_mhz": params.chi,
            "t2_us": params.t2,
        },
        "pulse": {
            "rise_time_ns": env.rise_time,
            "plateau_ns": env.plateau,
            "fall_time_ns": env.fall_time,
            "sample_dt_ns": env.sample_dt,
            "tau_ns": env.total_duration,
        },
        "amp_cal": amp_cal,
        "drag_policy": "notch at -delta_d (on the resonator), one notch per pulse",
        "amp_grid": [float(a) for a in amps],
        "detuning_grid_mhz": [float(d) for d in dets],
        "skipped_drag_detunings_mhz": [float(d) for d in skipped],
        "seed": args.seed,
    }
    write_json(out / "map_meta.json", meta)
    if args.svg:
        heatmap(out / "map_plain.svg", map_plain.detunings, map_plain.amps, map_plain.pe,
                "P_e without DRAG", "detuning (MHz)", "amplitude")
        heatmap(out / "map_drag.svg", map_drag.detunings, map_drag.amps, map_drag.pe,
                "P_e with DRAG", "detuning (MHz)", "amplitude")
    print(
        f"dephasing-map: {amps.size}x{dets.size} grid "
        f"(DRAG map {amps.size}x{dets_drag.size}); files in {out}"
    )
    return EXIT_OK


def cmd_crosstalk(args) -> int:
    conf = _resolve_config("crosstalk", args.preset, args.config)
    amp_cal = cfg.number(cfg.take(conf, "amp_cal", 1.0), "amp_cal")
    plan = cfg.build_plan(cfg.take(conf, "plan"))
    cfg.ensure_empty(conf, "config")
    out = _outdir(args)
    notches = None
    if args.select_notches:
        plan, report = select_notches(plan, amp_cal)
        notches = {
            p.target: (p.drag.notch_freq if p.drag is not None else None) for p in plan.pulses
        }
    else:
        report = crosstalk_matrix(plan, amp_cal)
    crosstalk_csv(out / "crosstalk_matrix.csv", report)
    write_json(out / "crosstalk_report.json", crosstalk_report_dict(report, notches))
    worst = float(np.max(report.gamma[~np.eye(len(report.resonator_ids), dtype=bool)])) if len(
        report.resonator_ids
    ) > 1 else 0.0
    print(
        f"crosstalk: {len(report.resonator_ids)}x{len(report.pulse_targets)} matrix, "
        f"worst off-diagonal {worst:.3e} /us; files in {out}"
    )
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_all()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.cid} {status} ({r.seconds:.1f}s) {r.title}: {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"selftest: {len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dragprobe",
        description="DRAG-notched readout probe pulses: spectra, dephasing, crosstalk",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "waveform": cmd_waveform,
        "spectrum": cmd_spectrum,
        "ramsey": cmd_ramsey,
        "dephasing-map": cmd_dephasing_map,
        "crosstalk": cmd_crosstalk,
    }
    for name, func in commands.items():
        p = sub.add_parser(name)
        p.add_argument("--preset", default=None)
        p.add_argument("--config", default=None)
        p.add_argument("--out", default="out")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--svg", action="store_true")
        if name == "crosstalk":
            p.add_argument("--select-notches", action="store_true")
        p.set_defaults(func=func)
    p = sub.add_parser("selftest")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResolutionError as exc:
        print(f"error:{exc.code}:{exc.detail}", file=sys.stderr)
        return EXIT_RESOLUTION
    except ValidationError as exc:
        print(f"error:{exc.code}:{exc.detail}", file=sys.stderr)
        return EXIT_VALIDATION
    except DragprobeError as exc:
        print(f"error:{exc.code}:{exc.detail}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error:io:{exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())

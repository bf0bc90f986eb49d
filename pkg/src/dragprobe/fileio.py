"""CSV and JSON emitters.

All CSVs use LF line endings, a header row, and full double precision (17
significant digits) so outputs are byte-stable across runs.  JSON is
emitted with sorted keys for the same reason.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .crosstalk import CrosstalkReport
from .dephasing import DephasingMap
from .dispersive import CavityTrajectory
from .ramsey import BeatingScan, RamseySweep
from .spectrum import SpectrumGrid
from .waveform import IQWaveform


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_csv(path: str | Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_json(path: str | Path, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8", newline="\n")


def waveform_csv(path, wf: IQWaveform) -> None:
    rows = zip(wf.times, wf.samples.real, wf.samples.imag)
    write_csv(path, ["t_ns", "i", "q"], rows)


def spectrum_csv(path, grid: SpectrumGrid, db_reference: float) -> None:
    """abs_db is relative to the supplied reference (the pulse's own DC peak)."""
    mag = np.abs(grid.amps)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag / db_reference) if db_reference > 0 else np.full_like(mag, -np.inf)
    rows = zip(grid.freqs, grid.amps.real, grid.amps.imag, db)
    write_csv(path, ["f_mhz", "re", "im", "abs_db"], rows)


def trajectory_csv(path, traj: CavityTrajectory) -> None:
    rows = zip(
        traj.times,
        traj.alpha_g.real,
        traj.alpha_g.imag,
        traj.alpha_e.real,
        traj.alpha_e.imag,
    )
    write_csv(path, ["t_ns", "re_ag", "im_ag", "re_ae", "im_ae"], rows)


def s21_csv(path, freqs, trace_g, trace_e) -> None:
    trace_g = np.asarray(trace_g)
    trace_e = np.asarray(trace_e)
    rows = zip(freqs, trace_g.real, trace_g.imag, trace_e.real, trace_e.imag)
    write_csv(path, ["f_mhz", "re_g", "im_g", "re_e", "im_e"], rows)


def map_csv(path, dmap: DephasingMap) -> None:
    rows = (
        (amp, det, dmap.pe[i, j], dmap.theta0[i, j])
        for i, amp in enumerate(dmap.amps)
        for j, det in enumerate(dmap.detunings)
    )
    write_csv(path, ["amp", "detuning_mhz", "pe", "theta0_rad"], rows)


def scan_csv(path, scan: BeatingScan) -> None:
    rows = (
        (tau, p.contrast, p.theta0, p.pe)
        for tau, p in zip(scan.taus, scan.points)
    )
    write_csv(path, ["tau_ns", "contrast", "theta0_rad", "pe"], rows)


def sweep_csv(path, sweep: RamseySweep) -> None:
    write_csv(path, ["theta_rad", "signal"], zip(sweep.thetas, sweep.signal))


def crosstalk_csv(path, report: CrosstalkReport) -> None:
    header = ["victim"] + [f"pulse_{t}" for t in report.pulse_targets]
    lines = [",".join(header)]
    for i, rid in enumerate(report.resonator_ids):
        lines.append(",".join([rid] + [fmt(v) for v in report.gamma[i]]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def crosstalk_report_dict(report: CrosstalkReport, notches: dict | None = None) -> dict:
    payload = {
        "resonator_ids": list(report.resonator_ids),
        "pulse_targets": list(report.pulse_targets),
        "gamma_per_us": [[float(v) for v in row] for row in report.gamma],
        "suppression_db": [[float(v) for v in row] for row in report.suppression_db],
    }
    if notches is not None:
        payload["notches_mhz"] = notches
    return payload

"""Strict run-configuration parsing: unknown keys are errors.

Configs are plain JSON-style dicts (from a preset, a --config file, or
both merged, file over preset).  Every consumer pops the keys it knows and
then asserts the block is empty, so silent preset drift is impossible.
"""
from __future__ import annotations

import copy
import json
from pathlib import Path

from .crosstalk import FrequencyPlan, ProbePulse, ResonatorEntry
from .dispersive import DispersiveParams
from .errors import ConfigError
from .waveform import DragParams, EnvelopeSpec

_MISSING = object()


def take(block: dict, key: str, default=_MISSING):
    if not isinstance(block, dict):
        raise ConfigError(f"expected an object where key {key!r} lives")
    if key in block:
        return block.pop(key)
    if default is _MISSING:
        raise ConfigError(f"missing required key {key!r}")
    return default


def ensure_empty(block: dict, path: str) -> None:
    if block:
        raise ConfigError(f"unknown key(s) in {path}: {sorted(block)}")


def number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path} must be a number, got {value!r}")
    return float(value)


def merge(base: dict, override: dict) -> dict:
    """Recursive dict merge; override wins, non-dict values replace."""
    out = copy.deepcopy(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def load_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a JSON object")
    return data


def build_envelope(block, path: str = "envelope") -> EnvelopeSpec:
    block = dict(block) if isinstance(block, dict) else block
    if not isinstance(block, dict):
        raise ConfigError(f"{path} must be an object")
    spec = EnvelopeSpec(
        amplitude=number(take(block, "amplitude"), f"{path}.amplitude"),
        rise_time=number(take(block, "rise_time"), f"{path}.rise_time"),
        plateau=number(take(block, "plateau"), f"{path}.plateau"),
        fall_time=number(take(block, "fall_time"), f"{path}.fall_time"),
        sample_dt=number(take(block, "sample_dt"), f"{path}.sample_dt"),
    )
    ensure_empty(block, path)
    return spec


def build_drag(block, path: str = "drag") -> DragParams | None:
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError(f"{path} must be an object or null")
    block = dict(block)
    drag = DragParams(
        notch_freq=number(take(block, "notch_freq"), f"{path}.notch_freq"),
        enabled=bool(take(block, "enabled", True)),
    )
    ensure_empty(block, path)
    return drag


def build_params(block, path: str = "params") -> DispersiveParams:
    if not isinstance(block, dict):
        raise ConfigError(f"{path} must be an object")
    block = dict(block)
    params = DispersiveParams(
        kappa=number(take(block, "kappa"), f"{path}.kappa"),
        chi=number(take(block, "chi"), f"{path}.chi"),
        delta_d=number(take(block, "delta_d"), f"{path}.delta_d"),
        t2=number(take(block, "t2"), f"{path}.t2"),
    )
    ensure_empty(block, path)
    return params


def build_plan(block, path: str = "plan") -> FrequencyPlan:
    if not isinstance(block, dict):
        raise ConfigError(f"{path} must be an object")
    block = dict(block)
    res_blocks = take(block, "resonators")
    pulse_blocks = take(block, "pulses")
    ensure_empty(block, path)
    if not isinstance(res_blocks, list) or not isinstance(pulse_blocks, list):
        raise ConfigError(f"{path}.resonators and {path}.pulses must be arrays")
    resonators = []
    for k, rb in enumerate(res_blocks):
        rb = dict(rb)
        rpath = f"{path}.resonators[{k}]"
        rid = take(rb, "id")
        if not isinstance(rid, str):
            raise ConfigError(f"{rpath}.id must be a string")
        resonators.append(
            ResonatorEntry(
                id=rid,
                f_r=number(take(rb, "f_r"), f"{rpath}.f_r"),
                kappa=number(take(rb, "kappa"), f"{rpath}.kappa"),
                chi=number(take(rb, "chi"), f"{rpath}.chi"),
                t2=number(take(rb, "t2"), f"{rpath}.t2"),
            )
        )
        ensure_empty(rb, rpath)
    pulses = []
    for k, pb in enumerate(pulse_blocks):
        pb = dict(pb)
        ppath = f"{path}.pulses[{k}]"
        target = take(pb, "target")
        if not isinstance(target, str):
            raise ConfigError(f"{ppath}.target must be a string")
        pulses.append(
            ProbePulse(
                target=target,
                f_d=number(take(pb, "f_d"), f"{ppath}.f_d"),
                envelope=build_envelope(take(pb, "envelope"), f"{ppath}.envelope"),
                drag=build_drag(take(pb, "drag", None), f"{ppath}.drag"),
            )
        )
        ensure_empty(pb, ppath)
    return FrequencyPlan(resonators=tuple(resonators), pulses=tuple(pulses))

"""Multiplexed frequency plans: leakage-induced dephasing matrix, notch selection.

Entry [i][j] of the crosstalk matrix is the dephasing rate induced on qubit
i by the probe pulse targeting resonator j, evaluated with the victim's own
(kappa, chi, T2) and the pulse spectrum shifted by the carrier-victim
detuning.  Only the relative frequencies enter, so shifting the whole plan
by a constant leaves the report unchanged.

One notch per pulse (the transform provides a single spectral zero);
multi-notch / balanced variants are out of scope.  Rates from simultaneous
probe tones on one victim are assumed to add (interference between tones is
neglected).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dephasing import spectral_rate
from .dispersive import DispersiveParams
from .errors import UndefinedNotchError, ValidationError
from .waveform import (
    DragParams,
    EnvelopeSpec,
    apply_drag,
    envelope_derivative,
    sample_envelope,
)


@dataclass(frozen=True)
class ResonatorEntry:
    """One readout resonator and its qubit: absolute frequency plus linewidths."""

    id: str
    f_r: float      # MHz, absolute
    kappa: float    # MHz
    chi: float      # MHz
    t2: float       # us

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValidationError(f"resonator {self.id!r}: kappa must be > 0")


@dataclass(frozen=True)
class ProbePulse:
    """Probe assignment: target resonator id, carrier, envelope, optional DRAG."""

    target: str
    f_d: float                  # MHz, absolute carrier
    envelope: EnvelopeSpec
    drag: DragParams | None = None


@dataclass(frozen=True)
class FrequencyPlan:
    resonators: tuple[ResonatorEntry, ...]
    pulses: tuple[ProbePulse, ...]

    def __post_init__(self):
        object.__setattr__(self, "resonators", tuple(self.resonators))
        object.__setattr__(self, "pulses", tuple(self.pulses))
        ids = [r.id for r in self.resonators]
        if len(set(ids)) != len(ids):
            raise ValidationError("resonator ids must be unique")
        for pulse in self.pulses:
            if pulse.target not in ids:
                raise ValidationError(f"pulse targets unknown resonator {pulse.target!r}")
        carriers = [p.f_d for p in self.pulses]
        for i in range(len(carriers)):
            for j in range(i + 1, len(carriers)):
                if carriers[i] == carriers[j]:
                    raise ValidationError("pairwise carrier spacings must be nonzero")

    def resonator(self, rid: str) -> ResonatorEntry:
        for r in self.resonators:
            if r.id == rid:
                return r
        raise ValidationError(f"unknown resonator id {rid!r}")


@dataclass(frozen=True)
class CrosstalkReport:
    """gamma[i][j]: rate (1/us) induced on qubit i by pulse j; suppression vs no-DRAG."""

    resonator_ids: tuple[str, ...]
    pulse_targets: tuple[str, ...]
    gamma: np.ndarray
    suppression_db: np.ndarray

    def __post_init__(self):
        gamma = np.ascontiguousarray(self.gamma, dtype=np.float64)
        supp = np.ascontiguousarray(self.suppression_db, dtype=np.float64)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "suppression_db", supp)
        object.__setattr__(self, "resonator_ids", tuple(self.resonator_ids))
        object.__setattr__(self, "pulse_targets", tuple(self.pulse_targets))
        if gamma.shape != (len(self.resonator_ids), len(self.pulse_targets)):
            raise ValidationError("gamma shape must be resonators x pulses")
        if np.any(gamma < 0):
            raise ValidationError("gamma entries must be >= 0")


def _pulse_waveform(pulse: ProbePulse):
    envelope = sample_envelope(pulse.envelope)
    if pulse.drag is not None and pulse.drag.enabled:
        if pulse.drag.notch_freq == 0.0:
            raise UndefinedNotchError(f"pulse for {pulse.target!r} has a zero notch")
        return apply_drag(envelope, envelope_derivative(pulse.envelope), pulse.drag)
    return envelope


def _rate(victim: ResonatorEntry, pulse: ProbePulse, wf, amp_cal: float) -> float:
    params = DispersiveParams(
        kappa=victim.kappa,
        chi=victim.chi,
        delta_d=victim.f_r - pulse.f_d,
        t2=victim.t2,
    )
    return spectral_rate(params, wf, amp_cal)


def crosstalk_matrix(plan: FrequencyPlan, amp_cal: float) -> CrosstalkReport:
    """Dephasing matrix of the plan as configured, plus suppression vs a no-DRAG baseline."""
    n_res = len(plan.resonators)
    n_pul = len(plan.pulses)
    gamma = np.zeros((n_res, n_pul))
    gamma_base = np.zeros((n_res, n_pul))
    for j, pulse in enumerate(plan.pulses):
        wf = _pulse_waveform(pulse)
        plain = sample_envelope(pulse.envelope)
        has_drag = pulse.drag is not None and pulse.drag.enabled
        for i, victim in enumerate(plan.resonators):
            gamma_base[i, j] = _rate(victim, pulse, plain, amp_cal)
            gamma[i, j] = _rate(victim, pulse, wf, amp_cal) if has_drag else gamma_base[i, j]
    with np.errstate(divide="ignore", invalid="ignore"):
        supp = 10.0 * np.log10(gamma_base / gamma)
    supp[~np.isfinite(supp)] = 0.0
    return CrosstalkReport(
        resonator_ids=tuple(r.id for r in plan.resonators),
        pulse_targets=tuple(p.target for p in plan.pulses),
        gamma=gamma,
        suppression_db=supp,
    )


def select_notches(plan: FrequencyPlan, amp_cal: float) -> tuple[FrequencyPlan, CrosstalkReport]:
    """Greedy per-pulse notch assignment onto the worst off-diagonal victim.

    For each pulse the baseline (no-DRAG) column is evaluated; the notch is
    placed on the victim with the largest induced dephasing, at frequency
    f_d - f_r(victim) so the spectral zero lands on that resonator.  Ties
    break toward the smaller |detuning|, then resonator order.  Returns the
    updated plan and its re-evaluated report.

    A single notch only has one zero: victims on the opposite side of the
    carrier see their spectral weight amplified by (1 - f/f_notch)^2 > 1,
    which shows up as negative suppression in the report.  Plans whose
    neighbors straddle the carrier need the (out-of-scope) balanced
    two-sided variant to win on both sides at once.
    """
    if len(plan.resonators) < 2:
        raise ValidationError("notch selection needs at least 2 resonators")
    stripped = replace(plan, pulses=tuple(replace(p, drag=None) for p in plan.pulses))
    baseline = crosstalk_matrix(stripped, amp_cal)
    new_pulses = []
    for j, pulse in enumerate(stripped.pulses):
        candidates = [
            (i, victim)
            for i, victim in enumerate(plan.resonators)
            if victim.id != pulse.target
        ]
        # worst victim first; ties toward smaller |detuning| then list order
        candidates.sort(
            key=lambda iv: (-baseline.gamma[iv[0], j], abs(iv[1].f_r - pulse.f_d), iv[0])
        )
        _, worst = candidates[0]
        detuning = worst.f_r - pulse.f_d
        if detuning == 0.0:
            raise UndefinedNotchError(
                f"worst victim {worst.id!r} sits at zero detuning from pulse "
                f"{pulse.target!r}; the plan is ill-posed for DRAG"
            )
        new_pulses.append(replace(pulse, drag=DragParams(notch_freq=-detuning)))
    new_plan = replace(plan, pulses=tuple(new_pulses))
    return new_plan, crosstalk_matrix(new_plan, amp_cal)

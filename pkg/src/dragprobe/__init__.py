"""dragprobe: DRAG-notched dispersive-readout probe pulses at desk scale.

Synthesize cosine-flattop probe envelopes, carve spectral notches with the
derivative-quadrature (DRAG) transform, integrate the driven dispersive
cavity, and quantify the measurement-induced dephasing and multiplexed-
readout crosstalk the probes cause.
"""
from ._kernels import BACKEND as KERNEL_BACKEND
from .crosstalk import (
    CrosstalkReport,
    FrequencyPlan,
    ProbePulse,
    ResonatorEntry,
    crosstalk_matrix,
    select_notches,
)
from .dephasing import (
    DephasingMap,
    QuadratureGrid,
    dephasing_map,
    excited_population,
    monochromatic_rate,
    spectral_rate,
)
from .dispersive import (
    CavityTrajectory,
    DispersiveParams,
    S21Fit,
    coherence_integrals,
    drive_strength,
    fit_s21,
    s21_response,
    simulate_cavity,
    snr_proxy,
    steady_state_alpha,
)
from .errors import (
    DragprobeError,
    FitError,
    GridMismatchError,
    ResolutionError,
    UndefinedNotchError,
    UndefinedReferenceError,
    ValidationError,
)
from .ramsey import (
    BeatingScan,
    RamseyPoint,
    RamseySweep,
    beat_frequency,
    effective_decay_constant,
    fit_decay,
    fit_sinusoid,
    scan_plateau,
    simulate_ramsey_point,
)
from .spectrum import SpectrumGrid, dtft, dtft_at, notch_depth, parseval_check
from .waveform import (
    DragParams,
    EnvelopeSpec,
    IQWaveform,
    apply_drag,
    envelope_derivative,
    sample_envelope,
    waveform_energy,
)

__version__ = "0.1.0"

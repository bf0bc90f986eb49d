import pytest

from dragprobe import DispersiveParams, EnvelopeSpec


@pytest.fixture
def ref_params():
    """kappa/2pi = 2.2 MHz, 2chi/2pi = 2.1 MHz, T2 = 18 us."""
    return DispersiveParams(kappa=2.2, chi=1.05, delta_d=0.0, t2=18.0)


@pytest.fixture
def short_env():
    """Small cosine-flattop pulse, cheap enough for per-test synthesis."""
    return EnvelopeSpec(amplitude=1.0, rise_time=5.0, plateau=50.0, fall_time=5.0, sample_dt=0.1)


@pytest.fixture
def fig_env():
    """The 200-ns-plateau probe used throughout the figure presets."""
    return EnvelopeSpec(amplitude=1.0, rise_time=5.0, plateau=200.0, fall_time=5.0, sample_dt=0.1)

"""Hot-kernel backend selection.

The compiled Cython extension is preferred; the NumPy fallback is used when
the extension was not built or when the environment variable
``DRAGPROBE_PURE_PYTHON`` is set (any non-empty value).  Both backends are
deterministic and agree to ~1e-13 relative; they are not bit-identical to
each other (summation order differs), but each is bit-stable run to run.
"""
from __future__ import annotations

import os

if os.environ.get("DRAGPROBE_PURE_PYTHON"):
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

BACKEND = _impl.BACKEND
dtft_phase_sum = _impl.dtft_phase_sum
rk4_pair_step = _impl.rk4_pair_step

"""Exception hierarchy shared across the package.

Every error carries a short machine-readable ``code`` used by the CLI,
which prints ``error:<code>:<detail>`` and maps the class to an exit code
(validation -> 2, resolution -> 3, IO -> 4).
"""


class DragprobeError(Exception):
    """Base class; ``code`` is a short machine-readable tag."""

    code = "error"

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ValidationError(DragprobeError):
    """Invalid input value, spec, or configuration."""

    code = "invalid_input"


class ConfigError(ValidationError):
    """Malformed or strictly-rejected run configuration."""

    code = "config"


class GridMismatchError(ValidationError):
    """Waveforms that must share a sample grid do not."""

    code = "grid_mismatch"


class UndefinedNotchError(ValidationError):
    """DRAG requested with a zero notch frequency (transform undefined)."""

    code = "undefined_notch"


class UndefinedReferenceError(ValidationError):
    """Ratio against a spectral reference that is exactly zero."""

    code = "undefined_reference"


class FitError(ValidationError):
    """Least-squares fit could not be performed or did not find a feature."""

    code = "fit_failure"


class ResolutionError(DragprobeError):
    """Step size or grid too coarse for the requested computation."""

    code = "resolution"

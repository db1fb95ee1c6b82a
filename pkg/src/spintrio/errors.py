"""Exception hierarchy shared across the package.

Each class maps to a CLI exit code category (see cli.main).
"""


class SpintrioError(Exception):
    """Base class for package-specific failures."""


class ValidationError(SpintrioError, ValueError):
    """A state or tensor violates a physicality/normalization invariant."""


class ConfigError(SpintrioError, ValueError):
    """Malformed or out-of-range run configuration (CLI exit code 2)."""


class AccuracyError(SpintrioError):
    """An integration failed its a-posteriori accuracy check (exit code 3)."""

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude

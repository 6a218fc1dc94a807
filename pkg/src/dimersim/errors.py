"""Exception hierarchy for the dimer simulation package."""


class DimerError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(DimerError, ValueError):
    """A scalar argument is outside its documented domain."""


class InvalidStateError(DimerError, ValueError):
    """A density matrix (or state spec) violates a structural invariant."""


class InvalidGeometryError(DimerError, ValueError):
    """A dipole geometry violates unit-norm or separation constraints."""


class IntegrationFailureError(DimerError, RuntimeError):
    """The adaptive integrator underflowed its step size.

    Carries the time at which integration stalled in ``time_us``.
    """

    def __init__(self, message, time_us):
        super().__init__(message)
        self.time_us = time_us


class NumericalFailureError(DimerError, RuntimeError):
    """An iterative numerical routine failed to converge or lost positivity."""


class NonUniqueSteadyStateError(DimerError, RuntimeError):
    """The generator kernel is (numerically) more than one-dimensional."""


class NonStationarityError(DimerError, RuntimeError):
    """Trajectory tail and direct steady-state solve disagree (horizon too short)."""


class UnknownPresetError(DimerError, KeyError):
    """Requested scenario preset is not registered."""


class ConfigError(DimerError, ValueError):
    """A run configuration document is malformed or violates a constraint."""

    def __init__(self, message, key=None):
        super().__init__(message if key is None else f"{key}: {message}")
        self.key = key

"""
Exception hierarchy for the solenoidal algebra engine.
"""


class SolenoidError(Exception):
    """Base class for every error raised by the engine."""


class DivisionByZero(SolenoidError, ZeroDivisionError):
    """Division by the zero Scalar."""


class SpecializationPole(SolenoidError):
    """A specialization makes a denominator vanish."""


class InvalidOrder(SolenoidError):
    """An identity was requested outside the orders it is stated for."""


class DegenerateInput(SolenoidError, ValueError):
    """Input that carries no information, e.g. a differentiator with step h = 0."""


class NotFound(SolenoidError):
    """A bounded search finished without a result."""


class InvalidRep(SolenoidError):
    """A JetRep violates the bracket relations of the jet algebra."""


class RepFormatError(SolenoidError):
    """A JetRep text file could not be parsed."""


class FitMismatch(SolenoidError):
    """
    A fitted polynomial disagrees with the samples on the verification box.

    Attributes:
        mismatches: List of lattice points where the fit and the samples differ
    """

    def __init__(self, message, mismatches=None):
        super().__init__(message)
        self.mismatches = list(mismatches or [])


class RankUnstable(SolenoidError):
    """A weight-space rank kept changing up to the evaluation window cap."""


class ConfigError(SolenoidError):
    """Invalid run configuration."""

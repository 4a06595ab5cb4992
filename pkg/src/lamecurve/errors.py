"""Exception hierarchy.

Validation problems (bad input, resonant parameters) map to CLI exit code 1,
everything else derived from :class:`NumericalError` maps to exit code 2.
"""


class LameCurveError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(LameCurveError, ValueError):
    """Invalid or resonant input parameters."""


class DomainError(LameCurveError, ValueError):
    """An argument lies outside the domain of an operation."""


class NumericalError(LameCurveError):
    """A numerical computation failed or produced inconsistent results."""


class PoleError(NumericalError):
    """An argument came too close to a zero of a theta-function denominator."""

    def __init__(self, message, argument=None):
        super().__init__(message)
        self.argument = argument


class ConsistencyError(NumericalError):
    """Two independent routes to the same quantity disagree."""


class DegreeMismatchError(ConsistencyError):
    """Interpolated polynomial does not reproduce the evaluator."""


class NumericalLimitError(NumericalError):
    """A limit computed by extrapolation is unstable."""


class DegenerateFibreError(NumericalError):
    """No well-separated null direction exists at a fibre point."""


class ConstructionError(NumericalError):
    """A randomized construction failed after all retries."""


class NormalizationError(NumericalError):
    """A normalizing value (such as the eigenfunction at ``ell*eta``) vanishes."""


class AsymptoticsError(NumericalError):
    """Sampled behaviour near the infinite points has the wrong convergence order."""


class ConditioningError(NumericalError):
    """A matrix to be inverted is too ill-conditioned."""

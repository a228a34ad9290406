"""Exception hierarchy for ivbounds.

Every error raised by the package derives from :class:`IvBoundsError`.
Conditions that are *informative results* rather than usage errors (a model
rejected by the data, a generalized-monotonicity check that fails) are
returned as values, not raised; see the individual modules.
"""

from __future__ import annotations


class IvBoundsError(Exception):
    """Base class for all ivbounds errors."""


# ---------------------------------------------------------------------------
# Core data-model errors
# ---------------------------------------------------------------------------

class DimensionMismatch(IvBoundsError):
    """A table's shape does not match the declared problem spaces."""


class NegativeMass(IvBoundsError):
    """A probability mass is negative."""


class MassNotOne(IvBoundsError):
    """A distribution does not sum to exactly one.

    Attributes:
        where: label of the offending slice (e.g. instrument index) or None.
        deficit: exact amount by which the sum misses one (sum - 1).
    """

    def __init__(self, message, where=None, deficit=None):
        super().__init__(message)
        self.where = where
        self.deficit = deficit


class IndexOutOfRange(IvBoundsError):
    """A treatment, instrument, or outcome index is out of range."""


# ---------------------------------------------------------------------------
# Model-construction errors
# ---------------------------------------------------------------------------

class EnumerationTooLarge(IvBoundsError):
    """An enumeration would exceed the configured cap."""


class UnknownModel(IvBoundsError):
    """Requested builtin model name is not registered."""


class IncompatibleSpaces(IvBoundsError):
    """The problem spaces do not fit the requested construction."""


class NotBinaryProblem(IncompatibleSpaces):
    """Operation requires outcome, treatment and instrument all binary."""


class NotBinaryTreatment(IncompatibleSpaces):
    """Operation requires exactly two treatments."""


class SameTreatment(IvBoundsError):
    """A treatment-effect query names the same treatment twice."""


# ---------------------------------------------------------------------------
# LP engine errors
# ---------------------------------------------------------------------------

class LpFailure(IvBoundsError):
    """Internal solver failure (should not occur in exact mode)."""


class InfeasibleModel(IvBoundsError):
    """No latent distribution in the model rationalizes the observed data.

    Carries the infeasibility certificate when one is available.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class AlphaOutOfRange(IvBoundsError):
    """A mixing weight lies outside [0, 1]."""


class SeedDoesNotRationalize(IvBoundsError):
    """The seed latent distribution does not push forward to the target."""


# ---------------------------------------------------------------------------
# I/O errors
# ---------------------------------------------------------------------------

class ParseError(IvBoundsError):
    """A problem file is malformed.

    Attributes:
        location: human-readable position of the offending content.
    """

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class ValidationError(IvBoundsError):
    """A parsed file fails semantic validation."""

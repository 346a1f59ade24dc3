"""Exception hierarchy.

Every error raised by the library derives from :class:`DeformationError`, so
callers (and the CLI) can separate bad input from programming errors.
"""


class DeformationError(ValueError):
    """Base class for all library errors."""


class InvalidParameter(DeformationError):
    """A parameter is non-positive or not finite."""


class DegenerateDeformation(DeformationError):
    """(pq)**nu == 1, so the deformed-number denominator vanishes."""


class NoAdmissibleRegime(DeformationError):
    """Neither (pq < 1, phi2 <= phi1) nor (pq > 1, phi1 <= phi2) holds."""


class NegativeRadicand(DeformationError):
    """A ladder coefficient would be the square root of a non-positive number."""


class NonConvergence(DeformationError):
    """A series did not reach the requested tolerance."""


class VanishingDenominator(DeformationError):
    """A finite sum has a zero denominator."""


class GuardBandExceeded(DeformationError):
    """The requested identity needs more Fock levels than the truncation holds."""


class ConventionViolation(DeformationError):
    """An operation defined only for chi0 == 0 and nu == alpha was called otherwise."""


class NonPositiveStructureFunction(DeformationError):
    """1 + 2*gamma*omega2 <= 0."""

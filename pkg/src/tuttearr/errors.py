"""Exception hierarchy.

Every failure that signals a broken identity or pipeline inconsistency
derives from :class:`CorrectnessAlarm`; the CLI maps those to exit code 1.
"""


class ArrangementError(Exception):
    """Base class for all package errors."""


class CorrectnessAlarm(ArrangementError):
    """Raised when two independent computations disagree."""


class DegenerateContraction(ArrangementError):
    pass


class DegreeOverflow(CorrectnessAlarm):
    pass


class InexactDivision(CorrectnessAlarm):
    pass


class VerificationMismatch(CorrectnessAlarm):
    pass


class IdentityFailure(CorrectnessAlarm):
    pass


class GenericityFailure(CorrectnessAlarm):
    pass


class NoStabilization(CorrectnessAlarm):
    pass


class NegativeCount(ArrangementError):
    pass


class NotPrime(ArrangementError):
    pass


class ResourceLimit(ArrangementError):
    pass


class NotComparable(ArrangementError):
    pass


class HypothesisViolated(ArrangementError):
    """A theorem's precondition does not hold; the check is skipped, not failed."""


class UnsupportedKind(ArrangementError):
    pass


class NonInvertibleDivisor(ArrangementError):
    pass


class BadExponent(ArrangementError):
    pass


class ZeroColumn(ArrangementError):
    pass

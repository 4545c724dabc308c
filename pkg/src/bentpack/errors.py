"""Exception hierarchy.

Every error raised for bad domain input derives from :class:`DomainError`
so callers (and the CLI) can catch the whole family at once.
"""


class DomainError(ValueError):
    pass


class NotBooleanSpectrum(DomainError):
    pass


class NotBent(DomainError):
    pass


class NotPlateaued(DomainError):
    pass


class BadCoordinate(DomainError):
    pass


class ZeroDirection(DomainError):
    pass


class SingularMatrix(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class SearchExhausted(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class NotPlateauedOnFace(DomainError):
    pass


class SumMismatch(DomainError):
    pass


class MalformedStream(DomainError):
    pass


class UnsupportedSize(DomainError):
    pass


class BadRadius(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class ParityMismatch(DomainError):
    pass


class TooLarge(DomainError):
    pass


class NotBijective(DomainError):
    pass


class EmptyRegion(DomainError):
    pass

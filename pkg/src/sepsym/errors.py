"""Exception hierarchy shared by all modules."""


class SepsymError(Exception):
    """Base class for every error raised by the package."""


class NotPrime(SepsymError, ValueError):
    pass


class TooLarge(SepsymError, ValueError):
    pass


class NoModulusAvailable(SepsymError, LookupError):
    pass


class DivisionByZero(SepsymError, ZeroDivisionError):
    pass


class FieldMismatch(SepsymError, ValueError):
    pass


class TruncationMismatch(SepsymError, ValueError):
    pass


class AmbientTooSmall(SepsymError, ValueError):
    pass


class ParameterMismatch(SepsymError, ValueError):
    pass


class NotSeparating(SepsymError, ValueError):
    pass


class NotDivisor(SepsymError, ValueError):
    pass


class DegreeMismatch(SepsymError, ValueError):
    pass


class NotMonic(SepsymError, ValueError):
    pass


class NoPreimage(SepsymError):
    """The given values are not the image of any orbit."""


class ScaleError(SepsymError):
    """A computation was refused because it exceeds a configured limit."""


class TooMany(ScaleError):
    pass


class UnsupportedScale(ScaleError):
    pass


class TheoremViolation(SepsymError):
    """A computation contradicted a proven statement; always a bug."""

"""Exception hierarchy shared by every module."""


class EcalgError(Exception):
    pass


class DomainError(EcalgError, ValueError):
    """An argument lies outside the domain of the operation (zero divisor, singular matrix...)."""


class UnsupportedField(EcalgError, ValueError):
    """The operation needs a finite field but got the rationals."""


class ResourceError(EcalgError, RuntimeError):
    """Enumeration or factorization would exceed the configured budget."""


class InvariantViolation(EcalgError, AssertionError):
    """Two independent routes disagreed; this should never fire."""


class ParseError(EcalgError, ValueError):
    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)

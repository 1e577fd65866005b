class PeterssonError(Exception):
    """
    Base class of every error raised by petersson_python.
    """


class DomainError(PeterssonError, ValueError):
    """
    An argument lies outside the mathematical domain of the operation.
    """


class PreconditionError(PeterssonError, ValueError):
    """
    A documented precondition (gcd condition, divisibility, modulus) does not hold.
    """


class ParityMismatchError(PreconditionError):
    """
    chi(-1) differs from (-1)^kappa, so the space in question is zero.
    """


class ModeError(PeterssonError):
    """
    The requested evaluation mode cannot handle the given arguments.
    """


class UnsupportedSpaceError(PeterssonError):
    """
    The shipped oracle has no data for the requested space or form.
    """


class PrecisionError(PeterssonError):
    """
    Precision is exhausted or a requested error bar cannot be met.
    """


class SuiteError(PeterssonError):
    """
    Unknown verification suite.
    """

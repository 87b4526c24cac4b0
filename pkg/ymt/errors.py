"""Errors raised by the workbench."""


class YMTError(Exception):
    """Base class for all errors raised by the workbench."""
    pass


class InputError(YMTError):
    """An error that occurs when the input to an operation is malformed, for
    example when dimensions do not match or a sampled domain is not closed.
    """
    pass


class PreconditionError(YMTError):
    """An error that occurs when the input is well formed but a mathematical
    precondition of the operation does not hold.
    """
    pass


class SingularityError(PreconditionError):
    """An error that occurs when a plaquette holonomy lies on the branch cut
    of the principal matrix logarithm.
    """
    pass


class VerificationError(YMTError):
    """An error that occurs when a result fails the checks that are re-run
    after it has been constructed.
    """
    pass

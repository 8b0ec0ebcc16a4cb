"""Exception hierarchy shared by every module."""


class SpinWignerError(Exception):
    """Base class for all package errors."""


class InvalidArgument(SpinWignerError, ValueError):
    """A precondition on an argument was violated.

    ``field`` names the offending parameter when one can be singled out.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DegenerateSuperposition(InvalidArgument):
    pass


class UnsupportedForKind(SpinWignerError, ValueError):
    """The requested operation is not defined for this parity kind."""


class NotInformationallyComplete(SpinWignerError):
    def __init__(self, rank, required):
        super().__init__(
            f"design matrix has rank {rank}, need {required} for reconstruction"
        )
        self.rank = rank
        self.required = required


class NumericFailure(SpinWignerError, ArithmeticError):
    pass


class UnderdeterminedFit(SpinWignerError, ValueError):
    pass


class SchemaError(SpinWignerError, ValueError):
    """Document does not match its schema.

    ``pointer`` is a JSON pointer (RFC 6901) to the offending field.
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer

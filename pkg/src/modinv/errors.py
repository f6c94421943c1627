"""Exception hierarchy shared by every module."""


class ModinvError(Exception):
    """Base class for all errors raised by modinv."""


class InvalidArgument(ModinvError, ValueError):
    pass


class DivisionByZero(ModinvError, ZeroDivisionError):
    pass


class FieldMismatch(ModinvError, ValueError):
    pass


class DimMismatch(ModinvError, ValueError):
    pass


class BudgetExceeded(ModinvError):
    """An enumeration ran past its configured budget.

    ``reached`` holds the count at which enumeration stopped.
    """

    def __init__(self, message, reached=None):
        super().__init__(message)
        self.reached = reached


class NotAModule(ModinvError):
    pass


class NotInSL(ModinvError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidParameters(ModinvError, ValueError):
    pass


class PreconditionFailed(ModinvError):
    pass


class TheoremContradicted(ModinvError):
    """A proved identity failed on valid input. Always an implementation bug."""

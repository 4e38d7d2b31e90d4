"""Exception types shared across the package."""


class RobyclifError(Exception):
    """Base class for all errors raised by robyclif."""


class InputError(RobyclifError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class VerificationError(RobyclifError):
    """A verification that was required to pass did not (CLI exit code 1).

    Carries the structured report so callers can render the failing check.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report

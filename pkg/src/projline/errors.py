"""Exception hierarchy shared across the package."""


class ProjlineError(Exception):
    """Base class for all library errors."""


class InvalidArrow(ProjlineError, ValueError):
    pass


class NotComposable(ProjlineError, ValueError):
    pass


class BadParameter(ProjlineError, ValueError):
    pass


class NotDegreeGraded(ProjlineError, ValueError):
    pass


class DomainError(ProjlineError, ValueError):
    """A slice function was evaluated below its domain of definition."""


class SizeMismatch(ProjlineError, ValueError):
    pass


class NotPartialIsometry(ProjlineError, ValueError):
    pass


class BadCertificate(ProjlineError):
    """Certificate verification failed.

    ``index`` is the position of the first failing move; it equals the number
    of moves when every move was a valid unitary but the end state did not
    match the claimed class.
    """

    def __init__(self, index: int, reason: str):
        super().__init__(f"move {index}: {reason}")
        self.index = index
        self.reason = reason

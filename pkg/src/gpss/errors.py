"""Exception hierarchy shared by the library and the command line front end."""


class GPSSError(Exception):
    """Base class for all errors raised by :mod:`gpss`."""


class IdenticalPointsError(GPSSError, ValueError):
    """Two coincident points do not determine a line."""


class DuplicatePointError(GPSSError, ValueError):
    pass


class PreconditionError(GPSSError, ValueError):
    """A solver or generator was called outside its domain."""


class InvalidPrimeError(PreconditionError):
    pass


class InfeasibleDensityError(PreconditionError):
    pass


class NotLatticeError(PreconditionError):
    pass


class NotDenseError(PreconditionError):
    pass


class DegenerateArrangementError(PreconditionError):
    pass


class ExhaustedSpaceError(PreconditionError):
    pass


class ParseError(GPSSError, ValueError):
    """Malformed instance file; ``lineno`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message, lineno=0, path=None):
        self.lineno = lineno
        self.path = path
        where = f"{path or '<input>'}:{lineno}: " if lineno else ""
        super().__init__(where + message)

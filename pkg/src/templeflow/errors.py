"""Exception hierarchy shared by the solver modules."""


class TempleflowError(Exception):
    """Base class for all errors raised by templeflow."""


class DomainError(TempleflowError, ValueError):
    """A state left the physical domain (vacuum, rho <= 0)."""


class ArgumentError(TempleflowError, ValueError):
    """Invalid argument that is not a state-domain problem."""


class ClassificationError(TempleflowError):
    """A solver was called on data of the wrong Riemann class.

    The actual classification is kept on ``kind`` so callers can dispatch.
    """

    def __init__(self, message, kind=None):
        super().__init__(message)
        self.kind = kind


class InconsistencyError(TempleflowError):
    """Internal consistency failure that the theory says cannot happen."""


class PreconditionError(TempleflowError):
    """Hypotheses required by a solver do not hold for the given data.

    ``failed`` lists the names of the failed conditions (``"H1"``, ``"H2"``,
    ``"gap"``).
    """

    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class CFLError(ArgumentError):
    """Time step exceeds the stability limit."""


class BreakdownError(TempleflowError):
    """The numerical scheme produced a non-physical state."""

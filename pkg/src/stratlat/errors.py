"""Exception hierarchy shared by all stratlat modules."""


class StratlatError(Exception):
    """Base class. ``witness`` carries the offending data when there is any."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CycleError(StratlatError):
    pass


class NotALattice(StratlatError):
    pass


class NotMonotone(StratlatError):
    pass


class NotProjection(StratlatError):
    pass


class NotAModel(StratlatError):
    pass


class A3dFails(StratlatError):
    pass


class PreconditionViolated(StratlatError):
    pass


class NotCoherent(StratlatError):
    pass


class IsoFailure(StratlatError):
    pass


class NotWeaklyMonotone(StratlatError):
    pass


class InternalError(StratlatError):
    """Raised when a result that must hold by construction does not."""


class DepthCapExceeded(InternalError):
    pass


class StateSpaceTooLarge(StratlatError):
    pass


class BudgetExceeded(StratlatError):
    pass


class ParseError(StratlatError):
    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}", witness=(line, column))
        self.line = line
        self.column = column

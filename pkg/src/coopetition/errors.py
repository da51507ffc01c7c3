"""Exception hierarchy shared by every module."""


class CoopetitionError(Exception):
    """Base class for all errors raised by this package."""


class GameError(CoopetitionError, ValueError):
    """A game description violates one of its invariants."""


class PriorNotNormalized(GameError):
    pass


class PartitionNotCovering(GameError):
    pass


class UnknownGood(GameError):
    pass


class BaseValueOutOfRange(GameError):
    pass


class ParseError(CoopetitionError, ValueError):
    pass


class ProfileIncomplete(CoopetitionError):
    pass


class UnreachableInformationSet(CoopetitionError):
    pass


class VariantMismatch(CoopetitionError):
    pass


class BudgetExceeded(CoopetitionError):
    pass


class NoPureBne(CoopetitionError):
    pass


class InfeasibleBaseValues(CoopetitionError):
    pass


class DegenerateAlpha(CoopetitionError):
    pass


class PreconditionViolated(CoopetitionError):
    pass


class NotABne(CoopetitionError):
    pass


class MissingCell(CoopetitionError):
    pass


class LpInfeasible(CoopetitionError):
    pass


class RegimeViolated(CoopetitionError):
    pass


class ClaimFailed(CoopetitionError):
    pass

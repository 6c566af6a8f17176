"""Exception hierarchy shared across the package."""


class RICalcError(Exception):
    """Base class for all errors raised by ricalc."""


class DuplicateLabel(RICalcError, ValueError):
    pass


class UnknownLabel(RICalcError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DimensionMismatch(RICalcError, ValueError):
    pass


class InvalidState(RICalcError, ValueError):
    pass


class NotTracePreserving(RICalcError, ValueError):
    pass


class NotIsometry(RICalcError, ValueError):
    pass


class UnknownKind(RICalcError, ValueError):
    pass


class OverlappingGroups(RICalcError, ValueError):
    pass


class OutOfRange(RICalcError, ValueError):
    pass


# symbolic side

class ParseError(RICalcError, ValueError):
    pass


class NegativeScale(RICalcError, ValueError):
    pass


class DegreeOverflow(RICalcError, ValueError):
    pass


class UnboundTag(RICalcError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ContextConflict(RICalcError, ValueError):
    pass


class SchemaMismatch(RICalcError, ValueError):
    pass


class MissingSideCondition(RICalcError, ValueError):
    pass


class UndischargedFlag(RICalcError, ValueError):
    pass


class InvalidWitness(RICalcError, ValueError):
    pass


class IncompatibleCurves(RICalcError, ValueError):
    pass


class OwnershipError(RICalcError, ValueError):
    """A party touched a system it does not hold."""

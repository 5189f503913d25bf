"""Exception hierarchy shared by all modules."""


class FroblieError(Exception):
    pass


# scalars
class InvalidSpec(FroblieError):
    pass


class NoRoot(FroblieError):
    pass


class FieldMismatch(FroblieError):
    pass


class DivisionByZero(FroblieError, ZeroDivisionError):
    pass


# free Lie algebras
class GeneratorSetMismatch(FroblieError):
    pass


# finite-dimensional algebras
class DimensionMismatch(FroblieError):
    pass


class NotClosed(FroblieError):
    pass


# group actions
class MissingRoot(FroblieError):
    pass


class NotDirectSum(FroblieError):
    pass


class NotApplicable(FroblieError):
    pass


class OrderMismatch(FroblieError):
    pass


# combinatorial engine
class ZeroIndexSlot(FroblieError):
    pass


class NotAMember(FroblieError):
    pass


class CapTooSmall(FroblieError):
    pass


# centralizer tower
class IndexSumViolation(FroblieError):
    pass


class LevelsIncomplete(FroblieError):
    pass


class TowerIncomplete(FroblieError):
    pass


class PreconditionViolation(FroblieError):
    pass


# BCH bridge
class ClassCapExceeded(FroblieError):
    pass


# front-end
class ParseError(FroblieError):
    def __init__(self, message, line=None, position=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", position {position})" if position is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.position = position


class HypothesisError(FroblieError):
    pass

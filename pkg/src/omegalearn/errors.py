"""Exception hierarchy shared by all omegalearn modules."""


class OmegalearnError(Exception):
    """Base class for all library errors."""


class SymbolNotInAlphabet(OmegalearnError):
    pass


class NotStronglyConnected(OmegalearnError):
    pass


class Unreachable(OmegalearnError):
    pass


class UnreachableState(OmegalearnError):
    pass


class EmptyInfinitySet(OmegalearnError):
    pass


class InconsistentPartialCondition(OmegalearnError):
    pass


class EmptySample(OmegalearnError):
    pass


class EmptyAlphabet(OmegalearnError):
    pass


class PreconditionViolated(OmegalearnError):
    pass


class InternalInconsistency(OmegalearnError):
    """A solver failed where the caller guaranteed it cannot; caller bug."""


class NotIRC(OmegalearnError):
    """The automaton has distinct states with identical residual languages."""


class UnsupportedType(OmegalearnError):
    pass


class UniverseTooLarge(OmegalearnError):
    """An exhaustive search was asked to enumerate past its guard."""


class AlphabetMismatch(OmegalearnError):
    pass


class InvalidCondition(OmegalearnError):
    pass


class ParseError(OmegalearnError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class DisjointnessViolation(OmegalearnError):
    pass


class UnsupportedFeature(OmegalearnError):
    pass

"""Exception hierarchy shared by all modules."""


class SemidenseError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class TableError(SemidenseError):
    pass


class EntryOutOfRange(TableError):
    def __init__(self, i: int, j: int, value: int, order: int):
        super().__init__(f"entry t[{i}][{j}] = {value} outside [0, {order})")
        self.i, self.j, self.value = i, j, value


class NotAssociative(TableError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"not associative at ({i}, {j}, {k})")
        self.triple = (i, j, k)


class ParseError(SemidenseError):
    pass


class Overflow(SemidenseError):
    pass


class QuotientError(SemidenseError):
    """The collapse relation fails to give a quotient semigroup."""

    def __init__(self, message: str, witness: tuple[int, ...]):
        super().__init__(f"{message}; witness {witness}")
        self.witness = witness


class NotAnEquivalence(QuotientError):
    pass


class NotWellDefined(QuotientError):
    pass


class PreconditionViolated(SemidenseError):
    pass


class SizeMismatch(SemidenseError):
    pass


class BoundExceeded(SemidenseError):
    pass


class NoSFC(SemidenseError):
    pass


class EmptyF(SemidenseError):
    pass


class NotAmenable(SemidenseError):
    pass


class NotInvariantInput(SemidenseError):
    pass


class MalformedLP(SemidenseError):
    pass


class BadEta(SemidenseError):
    pass


class OrderTooLarge(SemidenseError):
    pass


class UnknownCampaign(SemidenseError):
    pass


class BadIndex(SemidenseError):
    pass


class BadLength(SemidenseError):
    pass


class TheoremViolation(AssertionError):
    """A computation contradicted a proved statement; never a user error."""

"""Exception hierarchy. Every error carries a stable ``code`` echoed by the CLI."""


class SimpcxError(Exception):
    code = "SimpcxError"


class DegenerateSimplex(SimpcxError):
    code = "DegenerateSimplex"


class DuplicateSimplex(SimpcxError):
    code = "DuplicateSimplex"


class IndexOutOfRange(SimpcxError):
    code = "IndexOutOfRange"


class QuotientNotSimplicial(SimpcxError):
    code = "QuotientNotSimplicial"


class NotATriangle(SimpcxError):
    code = "NotATriangle"


class Disconnected(SimpcxError):
    code = "Disconnected"


class UnreducedRelator(SimpcxError):
    code = "UnreducedRelator"


class BadLengthTwoRelator(SimpcxError):
    code = "BadLengthTwoRelator"


class TooLarge(SimpcxError):
    code = "TooLarge"


class NotAComplex(SimpcxError):
    code = "NotAComplex"

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class BudgetExceeded(SimpcxError):
    code = "BudgetExceeded"

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class TrivialH1(SimpcxError):
    code = "TrivialH1"


class SystoleTooShort(SimpcxError):
    code = "SystoleTooShort"


class DomainError(SimpcxError):
    code = "DomainError"


class UnsupportedSpec(SimpcxError):
    code = "UnsupportedSpec"

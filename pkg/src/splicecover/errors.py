"""Exception hierarchy shared by all modules."""


class SpliceCoverError(Exception):
    """Base class for every error raised by this package."""


class UsageError(SpliceCoverError, ValueError):
    pass


class DomainError(SpliceCoverError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NoSolutionError(DomainError):
    pass


class DegenerateStringError(DomainError):
    """A continued fraction hit a zero denominator part way through."""


class SingularMatrixError(DomainError):
    pass


class IdealConditionError(DomainError):
    """An edge weight is not divisible by its ideal generator."""


class UnsupportedCaseError(SpliceCoverError):
    """Input is valid but the construction has no recipe for it."""


class MultiplicityMismatchError(SpliceCoverError):
    pass


class MalformedTraceError(SpliceCoverError):
    pass


class InternalConsistencyError(SpliceCoverError, AssertionError):
    """A self-check that should never fail did fail."""


class ParseError(SpliceCoverError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

"""Exception hierarchy shared by all gasp modules."""


class GaspError(Exception):
    """Base class for all errors raised by this package."""


class LimitExceeded(GaspError):
    """A configurable resource cap was exceeded."""


class DomainTooLarge(LimitExceeded):
    """A structure domain is too large for exhaustive treatment."""


class InterpretationTooLarge(LimitExceeded):
    """An interpretation is too large for subset enumeration."""


class TooManyHeads(LimitExceeded):
    """A program has too many head atoms for answer-set enumeration."""


class TooManyVariables(LimitExceeded):
    """A quantified formula has too many variables for the brute-force oracle."""


class PreconditionViolated(GaspError):
    """An operation was called outside its stated precondition."""


class NotConvex(GaspError):
    """A convex-only operation was applied to a non-convex structure."""


class NotNormalProgram(GaspError):
    """A normal-program-only operation met a generalized body."""


class ParseError(GaspError):
    """Syntax error in an input file, with source position when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class EmptyMatrix(ParseError):
    """A quantified formula has no clauses."""


class UnboundVariable(ParseError):
    """A literal mentions a variable missing from the quantifier prefix."""

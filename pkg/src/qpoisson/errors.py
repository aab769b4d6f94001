"""Exception hierarchy shared by all modules."""


class QPoissonError(Exception):
    """Base class for domain errors raised by the package."""


class UnboundParameterError(QPoissonError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"parameter {self.name!r} has no numeric binding"


class ParseError(QPoissonError):
    """Syntax error with a 1-based line/column position."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


class UndeclaredIdentifierError(ParseError):
    pass


class DegreeOverflowError(QPoissonError):
    pass


class ReductionLimitError(QPoissonError):
    pass


class UnsupportedPotentialError(QPoissonError):
    pass


class NonFiniteStateError(QPoissonError):
    def __init__(self, step, state):
        super().__init__(f"non-finite state {state!r} at step {step}")
        self.step = step
        self.state = state


class InconsistentSystemError(QPoissonError):
    pass

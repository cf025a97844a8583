"""Exception hierarchy for graphdesigns."""


class GraphDesignError(Exception):
    """Base class for all library errors."""


class OutOfRange(GraphDesignError, ValueError):
    pass


class Loop(GraphDesignError, ValueError):
    pass


class Duplicate(GraphDesignError, ValueError):
    pass


class Disconnected(GraphDesignError, ValueError):
    pass


class UnknownFixture(GraphDesignError, KeyError):
    pass


class NumericalFailure(GraphDesignError, ArithmeticError):
    pass


class DimensionMismatch(GraphDesignError, ValueError):
    pass


class FullyIntegrated(GraphDesignError, ValueError):
    pass


class BadTarget(GraphDesignError, ValueError):
    pass


class NotRegular(GraphDesignError, ValueError):
    pass


class TooLarge(GraphDesignError, ValueError):
    """A resource cap (enumeration size, matrix size) would be exceeded."""


class OutOfSupportedRange(GraphDesignError, ValueError):
    pass


class TooShort(GraphDesignError, ValueError):
    pass


class EmptyIndexSet(GraphDesignError, ValueError):
    pass


class NotStable(GraphDesignError, ValueError):
    pass


class EigenspaceMismatch(GraphDesignError, ValueError):
    pass


class DegenerateSubset(GraphDesignError, ValueError):
    pass


class ParseError(GraphDesignError, ValueError):
    pass


class Mismatch(GraphDesignError):
    """Raised when a reproduced table disagrees with its expected values."""

    def __init__(self, message, diffs, output=""):
        self.diffs = list(diffs)
        self.output = output
        super().__init__(message)

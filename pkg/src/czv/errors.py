"""Exception hierarchy.  The CLI maps these onto exit codes."""


class CzvError(Exception):
    exit_code = 1


class InvalidInputError(CzvError, ValueError):
    """Malformed user input (parse errors, bad colours, bad orders)."""
    exit_code = 2


class DegenerateInputError(InvalidInputError):
    """Zero vectors where a direction is needed."""


class DimensionError(InvalidInputError):
    """Vectors outside a lattice, wrong counts, span mismatches."""


class OutOfScopeError(InvalidInputError):
    """Request outside what the library renormalises (e.g. positive arguments)."""


class UnsupportedConeError(CzvError):
    """Non-simplicial or non-strongly-convex cone where one is required."""
    exit_code = 3


class InvalidDirectionError(CzvError):
    """A regularisation direction on which some pole vanishes."""
    exit_code = 4


class InvariantViolation(CzvError):
    """An internal identity that must hold exactly did not."""
    exit_code = 5


class OrderExceededError(InvalidInputError):
    """A Taylor coefficient beyond the jet's accuracy was requested."""

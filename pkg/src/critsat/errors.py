"""Exception types shared across the package."""


class CritsatError(Exception):
    """Base class for all errors raised by this package."""


class VariableOrderViolation(CritsatError):
    """Clause literals are not in strictly increasing variable order."""


class DuplicateVariable(CritsatError):
    """The same variable occurs twice in one clause (possibly with opposite signs)."""


class VariableOutOfRange(CritsatError):
    """A literal's variable index lies outside 1..n_vars."""


class DimacsSyntaxError(CritsatError):
    """Malformed DIMACS CNF input."""


class LengthMismatch(CritsatError):
    """An assignment's length does not match the formula's variable count."""


class ClauseWidthError(CritsatError):
    """A clause is wider than the operation supports."""


class InconsistentFixedSet(CritsatError):
    """A fixed literal set contains some literal together with its negation."""


class InvalidSpec(CritsatError):
    """Parameters describe an empty or contradictory sampling/experiment space."""


class TooLarge(CritsatError):
    """Input exceeds the hard size guard of an exhaustive operation."""

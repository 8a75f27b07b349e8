"""Exception types shared across the package."""


class HyperladderError(Exception):
    """Base class for the package's own errors."""


class ParameterError(HyperladderError, ValueError):
    """A family parameter is missing, malformed or outside its domain."""


class DegreeError(HyperladderError, ValueError):
    """A degree is outside the admissible range of the family."""


class KindError(HyperladderError, TypeError):
    """An operation was asked of the wrong kind of family."""


class DomainError(HyperladderError, ValueError):
    """A point lies outside the support or off the lattice."""


class InvariantError(HyperladderError, RuntimeError):
    """An internal consistency check failed; family data is corrupt."""

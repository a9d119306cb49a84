"""Exception hierarchy shared by all modules."""


class SalpeterError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SalpeterError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnboundedBelowError(DomainError):
    """The Hamiltonian cannot be shown to be bounded from below."""


class NotApplicableError(DomainError):
    """A bound or method does not apply to the given parameters."""


class UnsupportedError(SalpeterError, TypeError):
    """The operation is not defined for this kind of input."""


class NumericError(SalpeterError, ArithmeticError):
    """A numerical procedure failed to reach its accuracy target."""

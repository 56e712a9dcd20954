"""Exception taxonomy shared by all prolate modules."""


class ProlateError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(ProlateError, ValueError):
    """An argument has an invalid value (wrong range, mismatched lengths, ...)."""


class CapacityError(ProlateError):
    """A request exceeds a configured materialization or size cap."""


class DomainError(ProlateError):
    """Arguments are well formed but outside the mathematical validity window."""


class NumericalError(ProlateError):
    """An iterative numerical procedure failed to converge."""

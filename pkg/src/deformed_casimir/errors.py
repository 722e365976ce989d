"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a routine is defined."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure failed to reach the requested accuracy."""


class NonFiniteEvaluation(ConvergenceError):
    """An integrand returned NaN or infinity at an interior node."""


class PrecisionFloorError(ConvergenceError):
    """The requested accuracy is below what a representation can deliver."""

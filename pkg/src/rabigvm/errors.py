"""Exception types shared across the package."""


class RabiError(Exception):
    """Base class for all package errors."""


class DomainError(RabiError, ValueError):
    """An input violates a model or configuration invariant."""


class ConvergenceError(RabiError, ArithmeticError):
    """A root search or eigen-solver failed to converge."""


class DegenerateDenominatorError(RabiError, ArithmeticError):
    """A perturbative energy gap is zero or negative."""


class MissingOracleError(RabiError, KeyError):
    """An error summary was requested on data without exact-diagonalization values."""

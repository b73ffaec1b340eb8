"""Exception hierarchy shared by the symbolic and numeric layers."""


class KZError(Exception):
    """Base class for every error raised by this package."""


class AlphabetError(KZError, ValueError):
    """Operands live over different alphabets, or a letter is unknown."""


class PreconditionError(KZError, ValueError):
    """An argument violates the documented precondition of an operation."""


class DomainError(KZError, ValueError):
    """A numeric argument lies outside the convergence domain."""


class DivergenceError(DomainError):
    """The requested series or integral diverges."""


class ConvergenceError(KZError, ArithmeticError):
    """The term cap was reached before the requested tolerance.

    ``bound`` carries the best certified error bound that was achieved.
    """

    def __init__(self, message, bound=None, terms=None):
        super().__init__(message)
        self.bound = bound
        self.terms = terms


class InternalConsistencyError(KZError, RuntimeError):
    """A computed object contradicts a structural fact the code relies on."""

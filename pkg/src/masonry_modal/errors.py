"""Exception hierarchy shared by the solvers and the command line."""


class MasonryModalError(Exception):
    """Base class for all package errors."""


class DomainError(MasonryModalError, ValueError):
    """Input outside the domain where the no-tension model is defined."""


class LimitMomentError(MasonryModalError):
    """The bending moment reached the section capacity |N| h / 2.

    ``x`` carries the offending abscissa when the failure was located
    along the span.
    """

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class LimitLoadError(LimitMomentError):
    """The applied load reaches or exceeds the collapse load of the beam."""


class ConvergenceError(MasonryModalError):
    """Newton-Raphson failed to reach equilibrium."""

    def __init__(self, message, residual=float("nan"), iterations=0):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class ConstraintError(MasonryModalError):
    """The reduced elastic stiffness is singular for the given supports."""


class EigenError(MasonryModalError):
    """Generalized eigenproblem could not be solved as posed."""


class IndefiniteTangentError(EigenError):
    """Tangent stiffness has a negative eigenvalue (beyond the limit state)."""

    def __init__(self, message, eigenvalue):
        super().__init__(message)
        self.eigenvalue = eigenvalue

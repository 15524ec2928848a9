"""Exception hierarchy shared by all glspace modules."""


class GlsError(Exception):
    """Base class for all glspace errors."""


class DomainError(GlsError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DivergentMomentError(GlsError, ArithmeticError):
    """A moment integral failed to converge.

    Carries the offending exponent in ``p``.
    """

    def __init__(self, p: float, message: str = ""):
        self.p = p
        super().__init__(message or f"moment of order p={p} diverges")


class DegenerateModelError(GlsError, ValueError):
    """The model is almost surely zero, so moment ratios are undefined."""


class UnsupportedBackendError(GlsError, TypeError):
    """The model backend does not support the requested operation."""


class EmptyBatchError(GlsError, ValueError):
    """An empirical operation was asked to work on an empty sample."""


class NonMonotoneError(GlsError, ValueError):
    """An operation requiring a monotone generating function got a
    non-monotone one."""


class TruncationError(GlsError, RuntimeError):
    """A truncated enumeration was provably insufficient for the request."""


class NoFeasibleKError(GlsError, RuntimeError):
    """No scale in the candidate grid makes the tail envelope dominate the
    empirical survival function."""


class GroupAxiomError(GlsError, ValueError):
    """A group table violates associativity, identity, or inverse axioms."""


class SizeMismatchError(GlsError, ValueError):
    """Array sizes are inconsistent with the group order."""


class SpecParseError(GlsError, ValueError):
    """A textual object specifier could not be parsed."""

"""Exception hierarchy.

Every error carries a ``details`` mapping so the command line front end can
serialize it to JSON without knowing the concrete class.
"""

from __future__ import annotations


class BergmanLabError(Exception):
    """Base class for all structured errors raised by the package."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": type(self).__name__, "message": self.message}
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _plain(value):
    if hasattr(value, "tolist"):
        # numpy scalars and arrays
        value = value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


class DomainError(BergmanLabError, ValueError):
    """Input outside the domain of definition of an operation."""


class DimensionMismatch(BergmanLabError, ValueError):
    """A point or multi-index does not match the ambient dimension."""


class DiameterCase(BergmanLabError):
    """The geodesic through two ideal points is a diameter (no finite circle)."""


class SingularSample(BergmanLabError, ArithmeticError):
    """An integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, point: complex, **details):
        super().__init__(message, point=point, **details)
        self.point = point


class NonTraceClass(BergmanLabError):
    """Ring contributions to the trace integral fail to decay."""


class ConvergenceError(BergmanLabError, ArithmeticError):
    """An iterative solver stopped before reaching its tolerance."""

    def __init__(self, message: str, residual: float, **details):
        super().__init__(message, residual=residual, **details)
        self.residual = residual

"""Exception types shared across the package."""
from __future__ import annotations


class DissipaError(Exception):
    """Base class; ``at`` optionally carries the offending frequency."""

    def __init__(self, message: str, at=None):
        super().__init__(message)
        self.at = at


class ContractError(DissipaError):
    """Input violates a documented precondition."""


class DomainError(DissipaError):
    """Argument outside the domain of the operation (e.g. xi = 0, non-PD)."""


class EigenError(DissipaError):
    """Eigensolver failed or missed its residual contract."""


class DefectiveError(DissipaError):
    """Eigenvector basis too ill-conditioned to build projections."""


class ConditioningError(DissipaError):
    """Cluster representatives too close for the reduced-resolvent formula."""


class RangeError(DissipaError):
    """Overflow or non-finite result in a matrix function."""


class TrackingError(DissipaError):
    """Eigenvalue branch continuation became ambiguous."""

    def __init__(self, message: str, radius: float | None = None):
        super().__init__(message)
        self.radius = radius


class ClassificationError(DissipaError):
    """Fitted slopes are not close to integers."""

    def __init__(self, message: str, low_slope: float, high_slope: float):
        super().__init__(message)
        self.low_slope = low_slope
        self.high_slope = high_slope


class ResolutionError(DissipaError):
    """Quadrature did not converge under grid doubling."""

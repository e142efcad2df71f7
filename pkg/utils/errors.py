"""
Exception hierarchy for the verification toolkit

Checks that find a discrepancy do not raise; they return a CheckResult with
status "fail". Exceptions are reserved for invalid input and numerical abort.
Every class carries the process exit code the CLI maps it to.
"""

from typing import Any, Optional

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL_ABORT = 3


class VerificationError(Exception):
    """Base class for all toolkit errors"""

    exit_code: int = EXIT_CHECK_FAILURE


# Symbolic engine

class SymbolicError(VerificationError):
    """Failure inside the exact polynomial / rational-function engine"""


class NonSquareMatrixError(SymbolicError):
    """Determinant requested for a non-square matrix"""


class ZeroDivisorError(SymbolicError):
    """Division by (or substitution into) an identically zero denominator"""


class DegreeError(SymbolicError):
    """Polynomial remainder requested with a divisor of degree 0 in z"""


class ReplayMismatchError(SymbolicError):
    """A reduction stage does not reproduce its reference matrix"""

    def __init__(self, stage: str, row: int, col: int, expected: Any, actual: Any):
        self.stage = stage
        self.row = row
        self.col = col
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"stage {stage}: entry ({row + 1},{col + 1}) expected {expected}, got {actual}"
        )


# Ellipticity checks

class InadmissibleSampleError(VerificationError):
    """Coefficient sample violates |X| < N or has eta = 0"""

    exit_code = EXIT_USAGE


class RootFindingError(VerificationError):
    """Quadratic roots do not satisfy the symbol equation to tolerance"""

    exit_code = EXIT_NUMERICAL_ABORT


# Geometry

class GeometryError(VerificationError):
    """Failure while evaluating metrics or their derivatives"""

    exit_code = EXIT_NUMERICAL_ABORT


class CausalityViolationError(GeometryError):
    """N^2 <= |X|^2 or u <= 0: the Killing field is not time-like"""

    def __init__(self, message: str, point: Optional[Any] = None):
        self.point = point
        super().__init__(message)


class ExcludedRegionError(GeometryError):
    """Evaluation point (or stencil point) inside a fixture's excluded region"""


class DegenerateMetricError(GeometryError):
    """Metric or induced metric is singular or has the wrong signature"""


class TranslationTooLargeError(GeometryError):
    """Boundary time translation makes the square-root argument non-positive"""


# Flat boundary value problem

class FlatBVPError(VerificationError):
    """Failure in the spectral flat-background solver"""

    exit_code = EXIT_NUMERICAL_ABORT


class DomainError(FlatBVPError):
    """Basis evaluation requested inside the unit ball"""

    exit_code = EXIT_USAGE


class IllPosedTruncationError(FlatBVPError):
    """Smallest singular value on the rigid complement below threshold"""

    def __init__(self, message: str, sigma_min: float, threshold: float):
        self.sigma_min = sigma_min
        self.threshold = threshold
        super().__init__(message)


class UsageError(VerificationError):
    """Invalid command-line usage or input file"""

    exit_code = EXIT_USAGE


__all__ = [
    "EXIT_OK",
    "EXIT_CHECK_FAILURE",
    "EXIT_USAGE",
    "EXIT_NUMERICAL_ABORT",
    "VerificationError",
    "SymbolicError",
    "NonSquareMatrixError",
    "ZeroDivisorError",
    "DegreeError",
    "ReplayMismatchError",
    "InadmissibleSampleError",
    "RootFindingError",
    "GeometryError",
    "CausalityViolationError",
    "ExcludedRegionError",
    "DegenerateMetricError",
    "TranslationTooLargeError",
    "FlatBVPError",
    "DomainError",
    "IllPosedTruncationError",
    "UsageError",
]

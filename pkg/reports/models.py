"""
Pydantic models for verification reports and solver input
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, validator

CHECK_STATUSES = ("pass", "fail", "info")
GAMMA_PARTS = ("trace", "even", "odd")
TAU_PARTS = ("even", "odd")


class CheckResult(BaseModel):
    """One verified identity"""
    name: str = Field(..., description="Short machine name of the check")
    identity: str = Field(..., description="The checked formula in words")
    status: str = Field(..., description="pass, fail or info (reported, not asserted)")
    max_error: float = Field(..., description="Largest residual over all samples")
    tolerance: float = Field(..., ge=0, description="Residual bound for a pass")
    details: Dict[str, Any] = Field(default_factory=dict, description="Check-specific extras")

    @validator('status')
    def validate_status(cls, v):
        if v not in CHECK_STATUSES:
            raise ValueError(f'status must be one of {CHECK_STATUSES}')
        return v

    class Config:
        json_schema_extra = {
            "example": {
                "name": "vacuum_ricci",
                "identity": "Ric = 0",
                "status": "pass",
                "max_error": 3.1e-9,
                "tolerance": 1e-6,
                "details": {"n_points": 20}
            }
        }


class ModeCoefficient(BaseModel):
    """Coefficient of the real spherical harmonic Y_lm"""
    l: int = Field(..., ge=0, description="Harmonic degree")
    m: int = Field(..., description="Harmonic order, -l <= m <= l")
    value: float = Field(..., description="Coefficient")
    part: str = Field("scalar", description="Which potential (or solution component) the mode belongs to")

    @validator('m')
    def validate_order(cls, v, values):
        if 'l' in values and abs(v) > values['l']:
            raise ValueError('order m must satisfy |m| <= l')
        return v

    class Config:
        json_schema_extra = {
            "example": {"l": 2, "m": 0, "value": 1e-3, "part": "trace"}
        }


class BoundaryPerturbation(BaseModel):
    """
    Linearized Bartnik data around (round metric, 2, 0, 0) as scalar potentials

    gamma' = phi sigma + (Hess psi)_0 + odd(chi), tau' = grad alpha + n x grad beta;
    see flatbvp.data for the exact convention.
    """
    lmax: int = Field(..., ge=0, description="Largest degree present in the data")
    gamma_prime: List[ModeCoefficient] = Field(default_factory=list, description="parts: trace, even, odd")
    H_prime: List[ModeCoefficient] = Field(default_factory=list)
    k_prime: List[ModeCoefficient] = Field(default_factory=list)
    tau_prime: List[ModeCoefficient] = Field(default_factory=list, description="parts: even, odd")

    @validator('gamma_prime')
    def validate_gamma_parts(cls, v):
        for mode in v:
            if mode.part not in GAMMA_PARTS:
                raise ValueError(f'gamma_prime part must be one of {GAMMA_PARTS}')
            if mode.part != "trace" and mode.l < 2:
                raise ValueError('even and odd gamma_prime modes need l >= 2')
        return v

    @validator('tau_prime')
    def validate_tau_parts(cls, v):
        for mode in v:
            if mode.part not in TAU_PARTS:
                raise ValueError(f'tau_prime part must be one of {TAU_PARTS}')
            if mode.l < 1:
                raise ValueError('tau_prime modes need l >= 1')
        return v

    def modes(self):
        for name in ("gamma_prime", "H_prime", "k_prime", "tau_prime"):
            for mode in getattr(self, name):
                yield name, mode

    def max_degree(self) -> int:
        return max((mode.l for _, mode in self.modes()), default=0)

    class Config:
        json_schema_extra = {
            "example": {
                "lmax": 2,
                "gamma_prime": [{"l": 0, "m": 0, "value": 1e-3, "part": "trace"}],
                "H_prime": [{"l": 2, "m": 1, "value": -2e-3, "part": "scalar"}],
                "k_prime": [],
                "tau_prime": [{"l": 2, "m": -2, "value": 5e-4, "part": "odd"}]
            }
        }


class SolveReport(BaseModel):
    """Singular-value diagnostics and residuals of a flat-background solve"""
    mode: str = Field(..., description="kernel, harmonic_vector or solve")
    lmax: int = Field(..., ge=0, description="Truncation degree")
    n_rows: int = Field(..., ge=0)
    n_cols: int = Field(..., ge=0)
    sigma_max: float = Field(..., ge=0)
    sigma_min: float = Field(..., ge=0, description="Smallest singular value on the rigid complement")
    kernel_dim: int = Field(..., ge=0, description="Singular values below threshold * sigma_max")
    rigid_dim: int = Field(0, ge=0)
    reduced_kernel_dim: int = Field(0, ge=0, description="Kernel dimension on the rigid complement")
    rigid_residual: float = Field(0.0, ge=0, description="max |A r| / |r| over rigid vectors")
    bottom_singular_values: List[float] = Field(default_factory=list)
    threshold: float = Field(..., ge=0)
    boundary: Optional[str] = Field(None, description="dirichlet or neumann for the harmonic-vector check")
    projected_residual: Optional[float] = None
    interior_residual: Optional[float] = None
    boundary_residual: Optional[float] = None
    gauge_residual: Optional[float] = None
    decay_exponents: Dict[str, int] = Field(default_factory=dict)
    coefficients: List[ModeCoefficient] = Field(default_factory=list)
    status: str = Field("pass")

    @validator('status')
    def validate_status(cls, v):
        if v not in CHECK_STATUSES:
            raise ValueError(f'status must be one of {CHECK_STATUSES}')
        return v


class VerificationReport(BaseModel):
    """Result of one CLI suite"""
    tool_version: str = Field(..., description="Version of the toolkit that produced the report")
    suite: str = Field(..., description="symbols, adn, geometry, flatbvp-kernel or flatbvp-solve")
    seed: int = Field(..., description="Seed of every random draw in the run")
    config: Dict[str, Any] = Field(default_factory=dict, description="Run configuration echo")
    checks: List[CheckResult] = Field(default_factory=list)
    solves: List[SolveReport] = Field(default_factory=list, description="Flat-solver diagnostics, flatbvp suites only")

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    def first_failure(self) -> Optional[CheckResult]:
        return next((check for check in self.checks if check.status == "fail"), None)


__all__ = [
    "CHECK_STATUSES",
    "GAMMA_PARTS",
    "TAU_PARTS",
    "CheckResult",
    "VerificationReport",
    "ModeCoefficient",
    "BoundaryPerturbation",
    "SolveReport",
]

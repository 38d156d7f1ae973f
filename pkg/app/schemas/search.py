"""Schemas for the brute-force bound scans."""

from fractions import Fraction
from typing import Literal, Optional

from pydantic import Field, field_validator

from app.schemas.common import Rational, ReportModel
from app.schemas.hypergraph import InstanceDocument


class SearchSpace(ReportModel):
    r: int = Field(..., ge=2)
    class_sizes: list[int]
    mode: Literal["exhaustive", "random"] = "exhaustive"
    seed: int = 0
    trials: int = Field(0, ge=0)
    edge_probability: Rational = Fraction(1, 2)
    weighted: bool = False
    max_denominator: int = Field(8, ge=1)

    @field_validator("class_sizes")
    @classmethod
    def _positive_sizes(cls, sizes: list[int]) -> list[int]:
        if any(s < 1 for s in sizes):
            raise ValueError("class sizes must be positive")
        return sizes


class BoundViolation(ReportModel):
    index: int
    instance: InstanceDocument
    rho: list[Rational]
    clique_density: Rational
    lower_bound: Rational


class BoundReport(ReportModel):
    space: SearchSpace
    instances_checked: int
    min_slack: Optional[Rational] = None
    argmin_instance: Optional[InstanceDocument] = None
    tight_instances: int = Field(0, description="Instances with C = sum(rho) - r")
    violations: list[BoundViolation] = Field(default_factory=list)
    oracle_disagreements: int = 0


class BalancedSpace(ReportModel):
    """Seeded stream of strictly balanced instances for the threshold property scan."""
    r: int = Field(3, ge=2)
    class_size: int = Field(3, ge=1)
    seed: int = 0
    count: int = Field(10_000, ge=0)


class ThresholdFailure(ReportModel):
    index: int
    k: Optional[int] = None
    margin: Optional[Rational] = None
    reason: str
    instance: InstanceDocument


class ThresholdPropertyReport(ReportModel):
    space: BalancedSpace
    instances_checked: int
    witnesses_required: list[int] = Field(..., description="Per k: instances above the r-k-1 threshold")
    witnesses_found: list[int]
    clique_free_instances: int
    max_clique_free_edge_sum: Optional[Rational] = Field(None, description="Largest S(e) over clique-free instances")
    failure_count: int = 0
    failures: list[ThresholdFailure] = Field(default_factory=list)
    passed: bool

"""Schemas for neighbourhoods, degree balance and threshold certificates."""

from typing import Optional

from pydantic import Field

from app.schemas.common import Rational, ReportModel, VertexRef


class SubsetDegree(ReportModel):
    """d(I, g) for one set I of untouched classes."""
    classes: list[int]
    degree: int = Field(..., ge=0)


class DegreeProfile(ReportModel):
    partite_tuple: list[VertexRef] = Field(..., alias="tuple")
    degrees_by_class_subset: list[SubsetDegree]
    total_degree: int = Field(..., ge=0)


class BalanceVerdict(ReportModel):
    balanced: bool
    tuple_size: int
    tuples_checked: int
    violating_tuple: Optional[list[VertexRef]] = None
    violating_degrees: Optional[list[SubsetDegree]] = None


class EdgeSum(ReportModel):
    """S(e): normalised degrees into the distinguished class over the (r-1)-subtuples of e."""
    edge: list[VertexRef]
    s: Rational


class ThresholdCertificate(ReportModel):
    r: int
    k: int
    j_star: int = Field(..., description="Class maximising the sum of the other densities")
    max_sum: Rational
    threshold: int = Field(..., description="r - k - 1")
    margin: Rational
    balanced: bool
    per_edge_sums: list[EdgeSum] = Field(default_factory=list)
    max_edge_sum: Optional[Rational] = None
    all_classes: Optional[dict[int, list[EdgeSum]]] = None
    witness: Optional[list[VertexRef]] = None
    theorem_violation: bool = False


class CodegreeSummary(ReportModel):
    tuples: int
    min: int
    max: int
    mean: Rational


class EdgeCountCertificate(ReportModel):
    """Edge-count form of the balanced threshold, via the lift of a plain r-graph."""
    r: int
    n: int
    k: int
    edges: int
    threshold_edges: Rational = Field(..., description="(1 - (k+1)/r) * n^r / r!")
    exceeds: bool
    lift: ThresholdCertificate
    witness_in_graph: Optional[list[int]] = None
    missing_in_graph: Optional[int] = None
    theorem_violation: bool = False

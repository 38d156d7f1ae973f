"""Schemas for the Δ region, the extremal constructions and their recipes."""

from typing import Literal, Optional

from pydantic import Field

from app.schemas.common import Rational, ReportModel


class PosRegionVerdict(ReportModel):
    """Conditions under which the tripartite construction exists."""
    a: Rational
    b: Rational
    c: Rational
    delta: Rational
    delta_nonnegative: bool
    ab_plus_c_above_one: bool
    ac_plus_b_above_one: bool
    bc_plus_a_above_one: bool
    sum_at_least_nine_quarters: bool = Field(..., description="a+b+c >= 9/4")
    in_region: bool = Field(..., description="All four conditions hold")


class PosGridFailure(ReportModel):
    a: Rational
    b: Rational
    c: Rational
    delta: Rational


class PosGridReport(ReportModel):
    """Exhaustive check of the region conditions on a rational grid."""
    denominator: int
    triples_checked: int = Field(..., description="Triples with a+b+c >= 9/4")
    failures: list[PosGridFailure] = Field(default_factory=list)
    delta_at_three_quarters: Rational
    passed: bool


class BaseWeights(ReportModel):
    """
    Weights of the r=2 base graph.

    p1, p2, p3 are the weights of the first vertex of classes 0, 1, 2 (the second gets
    1 - p). split is the relative weight of the a1-c1 missing edge inside c1 when the
    seven vertex variant was used, None for the plain matching complement.
    """
    p1: Rational
    p2: Rational
    p3: Rational
    split: Optional[Rational] = None
    arrangement: Literal["disjoint", "concentrated"] = "disjoint"


class AddedEdges(ReportModel):
    complement: int = Field(..., description="Tuples spanning no K_r^(r-1) of the previous level")
    clique_creating: int = Field(..., description="Further tuples added in lexicographic order")


class ConstructionRecipe(ReportModel):
    """Replayable trace of an extremal construction."""
    r: int
    target_densities: list[Rational]
    tolerance: Rational = Field(default=0)
    permutation: list[int] = Field(
        ..., description="permutation[k] = original index of the k-th largest target"
    )
    base_weights: BaseWeights
    blow_up_scales: list[list[int]] = Field(
        default_factory=list, description="Per-class scales at uniformity 3..r"
    )
    added_edge_counts: list[AddedEdges] = Field(default_factory=list)
    achieved_densities: list[Rational]
    clique_density: Rational
    exact: bool


class TightnessRow(ReportModel):
    rho: list[Rational]
    achieved: Optional[list[Rational]] = None
    clique_density: Optional[Rational] = None
    lower_bound: Optional[Rational] = None
    slack: Optional[Rational] = None
    skipped: bool = False
    note: Optional[str] = None


class TightnessReport(ReportModel):
    r: int
    rows: list[TightnessRow]
    all_tight: bool

"""Clique analysis reports."""

from typing import Optional

from pydantic import Field

from app.schemas.common import Rational, ReportModel, VertexRef


class TransversalEdge(ReportModel):
    """One r-subset of a transversal and whether G has it as an edge."""
    vertices: list[VertexRef]
    present: bool


class CliqueReport(ReportModel):
    """Weighted count of (near-)cliques and the clique density C(G)."""
    clique_density: Rational = Field(..., alias="C", description="weighted_count / prod w(V_i)")
    weighted_count: Rational = Field(..., description="Sum of transversal weights that qualify")
    k: int = Field(0, ge=0, description="Missing edges tolerated per transversal")
    witnesses: Optional[list[list[VertexRef]]] = Field(
        None, description="Qualifying transversals, lexicographic order"
    )
    witnesses_truncated: bool = False


class NearCliqueQuery(ReportModel):
    """Number k of the r+1 edges a transversal may miss (0 <= k <= r+1)."""
    k: int = Field(0, ge=0)

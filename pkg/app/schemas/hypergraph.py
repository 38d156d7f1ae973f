"""Pydantic schemas for instance documents and density vectors."""

from fractions import Fraction

from pydantic import Field, field_validator

from app.schemas.common import Rational, ReportModel


class ClassDocument(ReportModel):
    """One vertex class: the weights of its vertices, in local index order."""
    weights: list[str] = Field(..., description="Vertex weights as 'p/q' strings")


class InstanceDocument(ReportModel):
    """On-disk / on-the-wire form of a PartiteHypergraph."""
    r: int = Field(..., ge=2, description="Uniformity")
    classes: list[ClassDocument] = Field(..., description="Ordered vertex classes")
    edges: list[list[list[int]]] = Field(
        default_factory=list, description="Edges as lists of [class_index, local_index]"
    )


class SimpleGraphDocument(ReportModel):
    """Plain r-graph on vertices 0..n-1 (input of the lift)."""
    r: int = Field(..., ge=2)
    n: int = Field(..., ge=0)
    edges: list[list[int]] = Field(default_factory=list)


class DensityVector(ReportModel):
    """rho[i] = w(E(P_i)) / prod_{j != i} w(V_j), one entry per omitted class."""
    rho: list[Rational] = Field(..., description="Densities, one per omitted class")

    @field_validator("rho")
    @classmethod
    def _in_unit_interval(cls, values: list[Fraction]) -> list[Fraction]:
        for i, value in enumerate(values):
            if not (0 <= value <= 1):
                raise ValueError(f"rho[{i}] = {value} is outside [0, 1]")
        return values

    @property
    def total(self) -> Fraction:
        return sum(self.rho, Fraction(0))

    def __len__(self) -> int:
        return len(self.rho)

    def __getitem__(self, index: int) -> Fraction:
        return self.rho[index]


class SubsetDensity(ReportModel):
    """Density of P_I for a general selector (t > r+1 graphs)."""
    omitted: list[int]
    density: Rational

"""Request bodies of the HTTP API."""

from fractions import Fraction
from typing import Optional, Union

from pydantic import Field

from app.schemas.common import Rational, ReportModel
from app.schemas.constructions import ConstructionRecipe
from app.schemas.hypergraph import InstanceDocument


class BlowUpRequest(ReportModel):
    instance: InstanceDocument
    scale: Union[int, list[int]] = Field(1, description="Global scale or one scale per class")


class ConstructRequest(ReportModel):
    r: int = Field(..., ge=2)
    rho: list[Rational] = Field(..., description="Target densities, one per class", examples=[["9/10"] * 4])
    tolerance: Rational = Fraction(0)


class ConstructResponse(ReportModel):
    instance: InstanceDocument
    recipe: ConstructionRecipe


class PosRegionRequest(ReportModel):
    a: Rational
    b: Rational
    c: Rational


class TightnessRequest(ReportModel):
    r: int = Field(..., ge=2)
    grid: Optional[list[list[Rational]]] = Field(
        None, description="Density vectors to check; omitted means the built-in grid"
    )

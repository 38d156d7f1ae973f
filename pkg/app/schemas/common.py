"""
Shared pydantic building blocks.

Rationals travel as "p/q" strings in every JSON document and as
fractions.Fraction inside the library.
"""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer, WithJsonSchema

from app.core.errors import BadRationalError
from app.models.rational import format_rational, parse_rational


def _coerce_rational(value: Any) -> Fraction:
    try:
        return parse_rational(value)
    except BadRationalError as e:
        raise ValueError(str(e)) from e


Rational = Annotated[
    Fraction,
    BeforeValidator(_coerce_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$", "examples": ["3/4"]}),
]

# [class_index, local_index]
VertexRef = tuple[int, int]


class ReportModel(BaseModel):
    """Base for all reports: Fractions allowed, aliases honoured on input."""

    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

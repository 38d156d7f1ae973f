"""Resolved command configuration, echoed into every report."""

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

Subcommand = Literal[
    "density",
    "cliques",
    "near-cliques",
    "construct",
    "lift",
    "blowup",
    "balance",
    "threshold",
    "codegrees",
    "edge-count",
    "verify-bound",
    "tightness",
    "threshold-property",
    "pos-region",
    "pos-grid",
]


class CommandConfig(BaseModel):
    subcommand: Subcommand
    input: Optional[str] = None
    output: Optional[str] = None
    format: Literal["json", "csv", "table"] = "json"
    seed: Optional[int] = None
    jobs: int = Field(1, ge=1)
    tolerance: Optional[str] = None
    decimal: Optional[int] = Field(None, ge=0)
    options: dict[str, Any] = Field(default_factory=dict)

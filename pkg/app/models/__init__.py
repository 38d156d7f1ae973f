# Domain data model
from app.models.hypergraph import (
    ClassSubsetSelector,
    Edge,
    PartiteHypergraph,
    SimpleHypergraph,
    VertexId,
)

__all__ = ["ClassSubsetSelector", "Edge", "PartiteHypergraph", "SimpleHypergraph", "VertexId"]

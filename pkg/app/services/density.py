"""
Density Service.

Edge weights, induced sub-hypergraphs P_I and the density vector. Class weights are
never normalised: every density divides by the product of the raw class weights.
"""

import logging
import math
from fractions import Fraction
from typing import Iterable, Sequence

from app.core.errors import NotFoundError, ShapeError
from app.models.hypergraph import ClassSubsetSelector, Edge, PartiteHypergraph, format_edge
from app.schemas.hypergraph import DensityVector, SubsetDensity

logger = logging.getLogger(__name__)


def edge_mass(graph: PartiteHypergraph, edges: Iterable[Edge]) -> Fraction:
    """Sum of edge weights (each the product of its vertex weights)."""
    if graph.is_unweighted:
        return Fraction(sum(1 for _ in edges))
    return sum(
        (math.prod((graph.weight(v) for v in e), start=Fraction(1)) for e in edges),
        Fraction(0),
    )


def require_clique_shape(graph: PartiteHypergraph) -> None:
    if graph.t != graph.r + 1:
        raise ShapeError(
            f"operation needs an (r+1)-partite r-graph: r={graph.r} but t={graph.t}"
        )


class DensityService:
    """Stateless density computations over immutable graphs."""

    @staticmethod
    def edge_weight(graph: PartiteHypergraph, edge: Sequence[Sequence[int]]) -> Fraction:
        """Product of the weights of the edge's vertices."""
        key = graph.canonical(edge)
        if key not in graph.edge_set:
            raise NotFoundError(f"{format_edge(key)} is not an edge")
        return math.prod((graph.weight(v) for v in key), start=Fraction(1))

    @staticmethod
    def induced_partite(graph: PartiteHypergraph, selector: ClassSubsetSelector) -> PartiteHypergraph:
        """P_I: drop the classes in I and every edge touching them; class order kept."""
        selector.validate(graph)
        kept = selector.kept(graph)
        remap = {old: new for new, old in enumerate(kept)}
        edges = [
            [(remap[v.class_index], v.local_index) for v in e]
            for e in graph.edges
            if all(v.class_index in remap for v in e)
        ]
        return PartiteHypergraph(graph.r, [graph.classes[c] for c in kept], edges)

    @staticmethod
    def density_vector(graph: PartiteHypergraph) -> DensityVector:
        """rho[i] = w(E(P_i)) / prod_{j != i} w(V_j) for an (r+1)-partite r-graph."""
        require_clique_shape(graph)
        masses = [Fraction(0)] * graph.t
        unit = graph.is_unweighted
        all_classes = set(range(graph.t))
        for e in graph.edges:
            (missing,) = all_classes.difference(v.class_index for v in e)
            if unit:
                masses[missing] += 1
            else:
                masses[missing] += math.prod((graph.weight(v) for v in e), start=Fraction(1))
        rho = [
            masses[i] / graph.total_weight(j for j in range(graph.t) if j != i)
            for i in range(graph.t)
        ]
        return DensityVector(rho=rho)

    @staticmethod
    def subset_density(graph: PartiteHypergraph, selector: ClassSubsetSelector) -> SubsetDensity:
        """Density of P_I when it is r-partite; the t > r+1 generalisation of rho(i)."""
        selector.validate(graph)
        kept = selector.kept(graph)
        if len(kept) != graph.r:
            raise ShapeError(f"P_I has {len(kept)} classes; density needs exactly r={graph.r}")
        kept_set = set(kept)
        edges = [e for e in graph.edges if all(v.class_index in kept_set for v in e)]
        density = edge_mass(graph, edges) / graph.total_weight(kept)
        return SubsetDensity(omitted=sorted(selector.omitted_indices), density=density)

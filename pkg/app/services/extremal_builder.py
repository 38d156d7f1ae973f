"""
Extremal Construction Service.

Builds an (r+1)-partite r-graph with densities ρ̄ and C(G) = Σρ(i) − r, for Σρ ≥ r.

With the targets sorted in decreasing order:
  * r = 2: the tripartite base graph (split-vertex variant, so always exact).
  * r > 2: build H1 for the first r targets at uniformity r−1 and blow it up to an
    unweighted graph. Add an apex class holding one vertex v of weight 1 and turn
    every H1-edge e into e ∪ {v}. Among the first r classes, first add every r-tuple
    that does not span a K_r^(r−1) of H1. Such a tuple creates no clique. Then add
    spanning tuples in lexicographic order until ρ(r+1) is reached.

Class 0 of each blow-up is scaled by the denominator of ρ(r+1)·N so that the edge
target is an integer.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from app.core.config import get_settings
from app.core.errors import (
    InfeasibleTargetError,
    OutOfRangeError,
    OutOfRegimeError,
    ScaleError,
    ShapeError,
    TheoremViolationError,
)
from app.models.hypergraph import PartiteHypergraph
from app.models.rational import format_rational, parse_rational
from app.schemas.constructions import AddedEdges, BaseWeights, ConstructionRecipe
from app.schemas.hypergraph import DensityVector
from app.services.blow_up import BlowUpService
from app.services.clique_counter import CliqueService
from app.services.density import DensityService
from app.services.tripartite import TripartiteService

logger = logging.getLogger(__name__)


def _fmt(values: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"


def permute_classes(graph: PartiteHypergraph, order: Sequence[int]) -> PartiteHypergraph:
    """Class k of `graph` becomes class order[k]."""
    classes: list = [None] * graph.t
    for k, target in enumerate(order):
        classes[target] = graph.classes[k]
    edges = [[(order[v.class_index], v.local_index) for v in e] for e in graph.edges]
    return PartiteHypergraph(graph.r, classes, edges)


def _add_level(
    lower: PartiteHypergraph,
    scales: Sequence[int],
    target_edges: Optional[int] = None,
    clique_creating: Optional[int] = None,
) -> tuple[PartiteHypergraph, AddedEdges]:
    """One recursion step: blow-up, apex lift, then the tuples of the new density."""
    blown = BlowUpService.blow_up(lower, list(scales))
    r = lower.r + 1
    apex = (r, 0)
    lifted = [[*((v.class_index, v.local_index) for v in e), apex] for e in blown.edges]

    spanning = CliqueService.clique_transversals(blown)
    free = math.prod(blown.class_sizes) - len(spanning)
    if clique_creating is None:
        if free > target_edges:
            raise TheoremViolationError(
                f"{free} clique-free tuples already exceed the target of {target_edges} edges"
            )
        clique_creating = target_edges - free
    if clique_creating > len(spanning):
        raise InfeasibleTargetError(
            f"needs {clique_creating} clique-creating tuples but only {len(spanning)} exist"
        )

    spanning_set = set(spanning)
    complement = [
        t for t in itertools.product(*(blown.vertices(c) for c in range(blown.t)))
        if t not in spanning_set
    ]
    added = complement + spanning[:clique_creating]
    graph = PartiteHypergraph.unweighted(r, [*blown.class_sizes, 1], lifted + added)
    return graph, AddedEdges(complement=free, clique_creating=clique_creating)


def _level_scales(lower: PartiteHypergraph, rho_next: Fraction) -> list[int]:
    scales = BlowUpService.minimal_scales(lower)
    needed = rho_next * math.prod(BlowUpService.blown_sizes(lower, scales))
    scales[0] *= needed.denominator
    settings = get_settings()
    sizes = BlowUpService.blown_sizes(lower, scales)
    if max(sizes) > settings.MAX_CLASS_SCALE or math.prod(sizes) > settings.MAX_LEVEL_TRANSVERSALS:
        raise ScaleError(
            f"exact target needs class sizes {sizes} ({math.prod(sizes)} transversals), above "
            f"{settings.MAX_CLASS_SCALE} per class or {settings.MAX_LEVEL_TRANSVERSALS} in total",
            minimal_scale=scales,
        )
    return scales


def _build_sorted(
    r: int, rho: list[Fraction], tolerance: Fraction
) -> tuple[PartiteHypergraph, BaseWeights, list[list[int]], list[AddedEdges]]:
    if r == 2:
        graph, recipe = TripartiteService.build_tripartite_base(*rho, tolerance=tolerance, allow_split=True)
        return graph, recipe.base_weights, [], []

    lower, weights, scales, counts = _build_sorted(r - 1, rho[:r], tolerance)
    level_scales = _level_scales(lower, rho[r])
    sizes = BlowUpService.blown_sizes(lower, level_scales)
    target = rho[r] * math.prod(sizes)
    graph, added = _add_level(lower, level_scales, target_edges=int(target))
    logger.debug(
        f"[EXTREMAL] r={r} sizes={sizes} target={target} "
        f"complement={added.complement} clique_creating={added.clique_creating}"
    )
    return graph, weights, scales + [level_scales], counts + [added]


class ExtremalBuilderService:

    @staticmethod
    def build_extremal(
        r: int,
        rho: Union[DensityVector, Sequence],
        tolerance=Fraction(0),
    ) -> tuple[PartiteHypergraph, ConstructionRecipe]:
        """
        (r+1)-partite r-graph with the given densities and C = Σρ − r, plus its recipe.

        Args:
            r: uniformity, at least 2.
            rho: r+1 target densities in [0, 1] with sum >= r, in any order.
            tolerance: allowed deviation of the tripartite base, recorded in the
                recipe. The split-vertex base is always exact.

        Returns:
            The graph, unweighted above r = 2, and the recipe that rebuilds it.

        Raises:
            OutOfRegimeError: if the densities sum to less than r.
            ScaleError: if an exact level needs classes above MAX_CLASS_SCALE.
        """
        values = list(rho.rho) if isinstance(rho, DensityVector) else [parse_rational(v, f"rho[{i}]") for i, v in enumerate(rho)]
        tolerance = parse_rational(tolerance, "tolerance")
        if r < 2:
            raise ShapeError(f"uniformity must be at least 2, got {r}")
        if len(values) != r + 1:
            raise ShapeError(f"need r+1 = {r + 1} densities, got {len(values)}")
        for i, value in enumerate(values):
            if not (0 <= value <= 1):
                raise OutOfRangeError(f"rho[{i}] = {value} is outside [0, 1]")
        excess = sum(values, Fraction(0)) - r
        if excess < 0:
            raise OutOfRegimeError(
                f"sum of densities is {format_rational(excess + r)} < r = {r}; the construction needs sum >= r"
            )

        order = sorted(range(r + 1), key=lambda i: -values[i])
        ordered = [values[i] for i in order]
        built, weights, scales, counts = _build_sorted(r, ordered, tolerance)
        graph = permute_classes(built, order)

        achieved = DensityService.density_vector(graph)
        report = CliqueService.clique_density(graph)
        if report.clique_density != achieved.total - r:
            raise TheoremViolationError(
                f"constructed graph has C = {report.clique_density}, expected {achieved.total - r}"
            )

        recipe = ConstructionRecipe(
            r=r,
            target_densities=values,
            tolerance=tolerance,
            permutation=order,
            base_weights=weights,
            blow_up_scales=scales,
            added_edge_counts=counts,
            achieved_densities=achieved.rho,
            clique_density=report.clique_density,
            exact=list(achieved.rho) == values,
        )
        logger.info(
            f"[EXTREMAL] r={r} rho={_fmt(values)} classes={list(graph.class_sizes)} "
            f"edges={len(graph.edges)} C={format_rational(report.clique_density)}"
        )
        return graph, recipe

    @staticmethod
    def replay_recipe(recipe: ConstructionRecipe) -> PartiteHypergraph:
        """Rebuild the graph from the recorded weights, scales and edge counts."""
        if len(recipe.blow_up_scales) != recipe.r - 2 or len(recipe.added_edge_counts) != recipe.r - 2:
            raise ShapeError(f"recipe for r={recipe.r} must record {recipe.r - 2} levels")
        base = recipe.base_weights
        graph = TripartiteService.build_matching_complement(
            (base.p1, base.p2, base.p3), base.arrangement, base.split
        )
        for scales, counts in zip(recipe.blow_up_scales, recipe.added_edge_counts):
            graph, added = _add_level(graph, scales, clique_creating=counts.clique_creating)
            if added.complement != counts.complement:
                raise InfeasibleTargetError(
                    f"recipe records {counts.complement} clique-free tuples, replay found {added.complement}"
                )
        return permute_classes(graph, recipe.permutation)

"""
Tripartite Base Construction.

The r=2 extremal graph: classes A, B, C with two vertices each,
weights (p1, 1-p1), (p2, 1-p2), (p3, 1-p3), and every partite pair an edge except
three missing ones

    (a0, b0)   (b1, c0)   (a1, c1)

No transversal contains two of them (any two disagree on a shared class), so every
transversal loses at most one edge and C = ρ(0) + ρ(1) + ρ(2) − 2 for ANY weights.
The "concentrated" arrangement (a0,b0), (a0,c0), (b0,c0) puts all three on one
triangle and breaks that identity.

Hitting targets (a, b, c) means solving
    p1·p2 = 1 − c,   (1 − p2)·p3 = 1 − a,   (1 − p1)(1 − p3) = 1 − b
which reduces to  b·x² − (a + b − c)·x + a(1 − c) = 0  for x = p2, with discriminant Δ(a, b, c).
"""

import logging
from fractions import Fraction
from typing import Literal, Optional, Sequence

from app.core.config import get_settings
from app.core.errors import ExactnessError, InfeasibleTargetError, OutOfRangeError, TheoremViolationError
from app.models.hypergraph import PartiteHypergraph
from app.models.rational import approx_sqrt, format_rational, parse_rational, rational_sqrt, simplest_between
from app.schemas.constructions import BaseWeights, ConstructionRecipe
from app.services.clique_counter import CliqueService
from app.services.density import DensityService
from app.services.pos_region import PosRegionService

logger = logging.getLogger(__name__)

Arrangement = Literal["disjoint", "concentrated"]

# (class, label) pairs; label 1 of class 2 is split into "1s" (missing part) and "1r" (rest)
_DISJOINT = [((0, "0"), (1, "0")), ((1, "1"), (2, "0")), ((0, "1"), (2, "1"))]
_DISJOINT_SPLIT = [((0, "0"), (1, "0")), ((1, "1"), (2, "0")), ((0, "1"), (2, "1s"))]
_CONCENTRATED = [((0, "0"), (1, "0")), ((0, "0"), (2, "0")), ((1, "0"), (2, "0"))]


def blocking_quadratic(a: Fraction, b: Fraction, c: Fraction) -> str:
    return (
        f"{format_rational(b)}*x^2 - ({format_rational(a + b - c)})*x "
        f"+ {format_rational(a * (1 - c))} = 0"
    )


def _unit(value, name: str) -> Fraction:
    value = parse_rational(value, name)
    if not (0 <= value <= 1):
        raise OutOfRangeError(f"{name} = {value} is outside [0, 1]")
    return value


class TripartiteService:

    @staticmethod
    def build_matching_complement(
        weights: Sequence[Fraction],
        arrangement: Arrangement = "disjoint",
        split: Optional[Fraction] = None,
    ) -> PartiteHypergraph:
        """
        Complete 3-partite 2-graph on (p1, 1-p1), (p2, 1-p2), (p3, 1-p3) minus three edges.

        With `split`, vertex c1 becomes two vertices of weights split*(1-p3) and
        (1-split)*(1-p3); only the first misses a1. Zero-weight vertices are dropped.
        """
        p1, p2, p3 = (_unit(p, f"p{i + 1}") for i, p in enumerate(weights))
        if arrangement not in ("disjoint", "concentrated"):
            raise OutOfRangeError(f"unknown arrangement {arrangement!r}")

        labelled: list[list[tuple[str, Fraction]]] = [
            [("0", p1), ("1", 1 - p1)],
            [("0", p2), ("1", 1 - p2)],
            [("0", p3), ("1", 1 - p3)],
        ]
        if split is None:
            missing = _DISJOINT if arrangement == "disjoint" else _CONCENTRATED
        else:
            if arrangement != "disjoint":
                raise OutOfRangeError("a split vertex is only defined for the disjoint arrangement")
            split = _unit(split, "split")
            labelled[2] = [("0", p3), ("1s", split * (1 - p3)), ("1r", (1 - split) * (1 - p3))]
            missing = _DISJOINT_SPLIT

        local: dict[tuple[int, str], int] = {}
        classes = []
        for c, row in enumerate(labelled):
            kept = []
            for label, w in row:
                if w > 0:
                    local[(c, label)] = len(kept)
                    kept.append(w)
            classes.append(kept)

        absent = {
            tuple(sorted(((u[0], local[u]), (v[0], local[v]))))
            for u, v in missing
            if u in local and v in local
        }
        graph = PartiteHypergraph(2, classes)
        edges = [e for e in graph.partite_tuples(2) if tuple(tuple(v) for v in e) not in absent]
        return graph.with_edges(edges)

    @staticmethod
    def solve_base_weights(
        a: Fraction,
        b: Fraction,
        c: Fraction,
        tolerance: Fraction = Fraction(0),
        allow_split: bool = False,
    ) -> BaseWeights:
        """Weights realising (a, b, c) on the matching complement (or its split variant)."""
        verdict = PosRegionService.check_pos_region(a, b, c)
        if not verdict.in_region:
            raise InfeasibleTargetError(
                f"({format_rational(a)}, {format_rational(b)}, {format_rational(c)}) is outside the "
                f"feasible region (Δ = {format_rational(verdict.delta)})"
            )

        alpha, beta, gamma = 1 - c, 1 - a, 1 - b
        linear = a + b - c
        root = rational_sqrt(verdict.delta)

        if root is not None:
            x = (linear - root) / (2 * b)
            p1, p3 = TripartiteService._outer_weights(x, alpha, beta, gamma)
            return BaseWeights(p1=p1, p2=x, p3=p3)

        if allow_split:
            # any p2 strictly between the roots works; the leftover deficit goes to the split edge
            x = TripartiteService._simplest_interior(linear, verdict.delta, b)
            p1, p3 = alpha / x, beta / (1 - x)
            room = (1 - p1) * (1 - p3)
            split = gamma / room if room else Fraction(1)
            return BaseWeights(p1=p1, p2=x, p3=p3, split=None if split == 1 else split)

        if tolerance == 0:
            raise ExactnessError(
                f"target ({format_rational(a)}, {format_rational(b)}, {format_rational(c)}) needs an "
                f"irrational weight: Δ = {format_rational(verdict.delta)} is not a rational square",
                quadratic=blocking_quadratic(a, b, c),
            )

        approx = (linear - approx_sqrt(verdict.delta)) / (2 * b)
        x = approx.limit_denominator(get_settings().APPROX_MAX_DENOMINATOR)
        x = min(max(x, alpha), a)
        p1, p3 = TripartiteService._outer_weights(x, alpha, beta, gamma)
        return BaseWeights(p1=p1, p2=x, p3=p3)

    @staticmethod
    def _simplest_interior(linear: Fraction, delta: Fraction, b: Fraction) -> Fraction:
        """Least-denominator x with b·x² − linear·x + a(1−c) <= 0, for irrational roots."""
        inner = approx_sqrt(delta)
        return simplest_between((linear - inner) / (2 * b), (linear + inner) / (2 * b))

    @staticmethod
    def _outer_weights(x: Fraction, alpha: Fraction, beta: Fraction, gamma: Fraction) -> tuple[Fraction, Fraction]:
        """p1 and p3 from p2 = x; a free weight (x at 0 or 1) is fixed by the third equation."""
        if x == 0:
            # alpha = 0; p3 = beta, choose p1 so that (1-p1)(1-p3) = gamma
            p3 = beta
            p1 = 1 - gamma / (1 - p3) if p3 < 1 else Fraction(0)
            return min(max(p1, Fraction(0)), Fraction(1)), p3
        if x == 1:
            p1 = alpha
            p3 = 1 - gamma / (1 - p1) if p1 < 1 else Fraction(0)
            return p1, min(max(p3, Fraction(0)), Fraction(1))
        return alpha / x, beta / (1 - x)

    @staticmethod
    def build_tripartite_base(
        a,
        b,
        c,
        tolerance=Fraction(0),
        allow_split: bool = False,
    ) -> tuple[PartiteHypergraph, ConstructionRecipe]:
        """
        Weighted 3-partite 2-graph with densities (a, b, c) and C = a + b + c − 2.

        Exact when Δ(a, b, c) is a rational square, or always with allow_split. Otherwise
        p2 is rounded to a denominator <= APPROX_MAX_DENOMINATOR and the achieved
        densities must lie within `tolerance` of the targets.
        """
        a, b, c = _unit(a, "a"), _unit(b, "b"), _unit(c, "c")
        tolerance = parse_rational(tolerance, "tolerance")
        if tolerance < 0:
            raise OutOfRangeError("tolerance must be non-negative")

        weights = TripartiteService.solve_base_weights(a, b, c, tolerance, allow_split)
        graph = TripartiteService.build_matching_complement(
            (weights.p1, weights.p2, weights.p3), "disjoint", weights.split
        )
        achieved = DensityService.density_vector(graph)
        deviation = max(abs(x - y) for x, y in zip(achieved.rho, (a, b, c)))
        if deviation > tolerance:
            raise InfeasibleTargetError(
                f"closest rational weights miss the target by {format_rational(deviation)} "
                f"> tolerance {format_rational(tolerance)}"
            )

        report = CliqueService.clique_density(graph)
        if report.clique_density != achieved.total - 2:
            raise TheoremViolationError(
                f"base graph has C = {report.clique_density}, expected {achieved.total - 2}"
            )

        recipe = ConstructionRecipe(
            r=2,
            target_densities=[a, b, c],
            tolerance=tolerance,
            permutation=[0, 1, 2],
            base_weights=weights,
            achieved_densities=achieved.rho,
            clique_density=report.clique_density,
            exact=deviation == 0,
        )
        logger.info(
            f"[BASE] target=({format_rational(a)}, {format_rational(b)}, {format_rational(c)}) "
            f"p=({format_rational(weights.p1)}, {format_rational(weights.p2)}, {format_rational(weights.p3)})"
            f" split={format_rational(weights.split) if weights.split is not None else '-'}"
            f" C={format_rational(report.clique_density)}"
        )
        return graph, recipe

"""
Degree Analysis Service.

Neighbourhoods N(I, g) of partite tuples, strict codegree balance, and the
density threshold for balanced (r+1)-partite r-graphs: if
max_j Σ_{i≠j} ρ(i) > r − k − 1 and G is strictly balanced, G contains K_{r+1}^r − k.

S(e) for an edge e of P_j sums, over the r subtuples g of e of size r−1, the share
of V_j completing g. Whenever S(e) > r − k − 1 some vertex of V_j completes all but
at most k of them, which gives the near-clique directly.
"""

import itertools
import logging
import math
from collections import Counter, defaultdict
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from app.core.errors import InvalidSelectorError, OutOfRangeError, ShapeError
from app.models.hypergraph import Edge, PartiteHypergraph, SimpleHypergraph, VertexId
from app.models.rational import format_rational
from app.schemas.degrees import (
    BalanceVerdict,
    CodegreeSummary,
    DegreeProfile,
    EdgeCountCertificate,
    EdgeSum,
    SubsetDegree,
    ThresholdCertificate,
)
from app.services.clique_counter import CliqueService
from app.services.density import DensityService, require_clique_shape
from app.services.lift import LiftService
from app.services.neighbourhoods import CompletionIndex

logger = logging.getLogger(__name__)


def _partite_tuple(graph: PartiteHypergraph, g: Iterable[Sequence[int]]) -> tuple[VertexId, ...]:
    vertices = graph.canonical(g)
    if len({v.class_index for v in vertices}) != len(vertices):
        raise ShapeError("a partite tuple has at most one vertex per class")
    return vertices


def _count_partite_tuples(graph: PartiteHypergraph, size: int) -> int:
    return sum(
        math.prod(graph.class_sizes[c] for c in chosen)
        for chosen in itertools.combinations(range(graph.t), size)
    )


def _subset_counts(graph: PartiteHypergraph, size: int) -> dict[Edge, Counter]:
    """For every size-subtuple g of an edge: classes of e minus g -> number of such edges."""
    counts: dict[Edge, Counter] = defaultdict(Counter)
    for e in graph.edges:
        for positions in itertools.combinations(range(graph.r), size):
            g = tuple(e[p] for p in positions)
            rest = tuple(v.class_index for i, v in enumerate(e) if i not in positions)
            counts[g][rest] += 1
    return counts


def _edge_sums(graph: PartiteHypergraph, index: CompletionIndex, j: int) -> list[EdgeSum]:
    size = len(graph.classes[j])
    sums = []
    for e in graph.edges:
        if any(v.class_index == j for v in e):
            continue
        total = sum(index.degree(e[:pos] + e[pos + 1:], j) for pos in range(graph.r))
        sums.append(EdgeSum(edge=[tuple(v) for v in e], s=Fraction(total, size)))
    return sums


class DegreeAnalysisService:

    @staticmethod
    def neighbourhood(
        graph: PartiteHypergraph, g: Iterable[Sequence[int]], classes: Iterable[int]
    ) -> list[Edge]:
        """N(I, g): tuples h with one vertex in each class of I such that g ∪ h is an edge."""
        g = _partite_tuple(graph, g)
        wanted = tuple(sorted(set(classes)))
        touched = {v.class_index for v in g}
        if any(not (0 <= c < graph.t) for c in wanted):
            raise InvalidSelectorError(f"class indices {list(wanted)} out of range for t={graph.t}")
        if touched.intersection(wanted):
            raise InvalidSelectorError("I overlaps the classes of g")
        if len(g) + len(wanted) != graph.r:
            raise ShapeError(f"|g| + |I| must equal r={graph.r}, got {len(g)} + {len(wanted)}")

        members = set(g)
        found = []
        for e in graph.edges:
            if members.issubset(e):
                h = tuple(v for v in e if v not in members)
                if tuple(v.class_index for v in h) == wanted:
                    found.append(h)
        return sorted(found)

    @staticmethod
    def degree_profile(graph: PartiteHypergraph, g: Iterable[Sequence[int]]) -> DegreeProfile:
        """d(I, g) for every (r − |g|)-set I of classes untouched by g, and d(g)."""
        g = _partite_tuple(graph, g)
        if not (1 <= len(g) <= graph.r - 1):
            raise OutOfRangeError(f"tuple size must lie in [1, {graph.r - 1}], got {len(g)}")
        touched = {v.class_index for v in g}
        free = [c for c in range(graph.t) if c not in touched]

        members = set(g)
        counts: Counter = Counter()
        for e in graph.edges:
            if members.issubset(e):
                counts[tuple(v.class_index for v in e if v not in members)] += 1

        degrees = [
            SubsetDegree(classes=list(subset), degree=counts.get(subset, 0))
            for subset in itertools.combinations(free, graph.r - len(g))
        ]
        return DegreeProfile(
            partite_tuple=[tuple(v) for v in g],
            degrees_by_class_subset=degrees,
            total_degree=sum(d.degree for d in degrees),
        )

    @staticmethod
    def is_strictly_balanced(graph: PartiteHypergraph, tuple_size: Optional[int] = None) -> BalanceVerdict:
        """Every partite tuple of the given size has the same d(I, g) for all admissible I."""
        size = graph.r - 1 if tuple_size is None else tuple_size
        if not (1 <= size <= graph.r - 1):
            raise OutOfRangeError(f"tuple size must lie in [1, {graph.r - 1}], got {size}")

        subsets_per_tuple = comb(graph.t - size, graph.r - size)
        checked = _count_partite_tuples(graph, size)
        counts = _subset_counts(graph, size)

        # tuples outside `counts` have degree 0 everywhere
        for g in sorted(counts):
            by_subset = counts[g]
            if len(by_subset) == subsets_per_tuple and len(set(by_subset.values())) == 1:
                continue
            profile = DegreeAnalysisService.degree_profile(graph, g)
            logger.info(f"[BALANCE] t'={size}: unbalanced at {[tuple(v) for v in g]}")
            return BalanceVerdict(
                balanced=False,
                tuple_size=size,
                tuples_checked=checked,
                violating_tuple=profile.partite_tuple,
                violating_degrees=profile.degrees_by_class_subset,
            )

        logger.info(f"[BALANCE] t'={size}: {checked} tuples, balanced")
        return BalanceVerdict(balanced=True, tuple_size=size, tuples_checked=checked)

    @staticmethod
    def threshold_check(graph: PartiteHypergraph, k: int = 0, all_classes: bool = False) -> ThresholdCertificate:
        """
        Certificate for the balanced threshold: j*, margin, S(e) per edge and a witness.

        Args:
            graph: unweighted (r+1)-partite r-graph.
            k: number of edges the witness may miss, 0 <= k <= r - 1.
            all_classes: also report S(e) with every class as the distinguished one.

        Returns:
            The certificate. theorem_violation is set when the graph is strictly
            balanced, the margin is positive and no K_{r+1}^r - k exists.
        """
        require_clique_shape(graph)
        r = graph.r
        if not (0 <= k <= r - 1):
            raise OutOfRangeError(f"k must lie in [0, {r - 1}], got {k}")
        if not graph.is_unweighted:
            raise ShapeError("threshold check needs an unweighted graph; blow it up first")

        rho = DensityService.density_vector(graph)
        sums = [rho.total - value for value in rho.rho]
        max_sum = max(sums)
        j_star = sums.index(max_sum)
        threshold = r - k - 1
        margin = max_sum - threshold
        balanced = DegreeAnalysisService.is_strictly_balanced(graph, r - 1).balanced

        index = CompletionIndex(graph)
        per_edge = _edge_sums(graph, index, j_star)
        diagnostics = {j: _edge_sums(graph, index, j) for j in range(graph.t)} if all_classes else None

        witness = None
        if margin > 0:
            if k == 0:
                found = CliqueService.contains_clique(graph)
            else:
                report = CliqueService.count_near_cliques(graph, k, with_witnesses=True, max_witnesses=1)
                found = report.witnesses[0] if report.witnesses else None
            witness = [tuple(v) for v in found] if found is not None else None

        violation = balanced and margin > 0 and witness is None
        if violation:
            logger.error(
                f"[THRESHOLD] THEOREM VIOLATION: balanced graph with margin {format_rational(margin)} "
                f"has no K_{r + 1}^{r} - {k}"
            )
        else:
            logger.info(
                f"[THRESHOLD] k={k} j*={j_star} margin={format_rational(margin)} "
                f"balanced={balanced} witness={'yes' if witness else 'no'}"
            )
        return ThresholdCertificate(
            r=r,
            k=k,
            j_star=j_star,
            max_sum=max_sum,
            threshold=threshold,
            margin=margin,
            balanced=balanced,
            per_edge_sums=per_edge,
            max_edge_sum=max((s.s for s in per_edge), default=None),
            all_classes=diagnostics,
            witness=witness,
            theorem_violation=violation,
        )

    @staticmethod
    def codegree_profile(graph: PartiteHypergraph) -> CodegreeSummary:
        """min / max / mean number of edges through a partite (r−1)-tuple."""
        tuples = _count_partite_tuples(graph, graph.r - 1)
        index = CompletionIndex(graph)
        degrees = [
            sum(index.degree(g, c) for c in range(graph.t))
            for g in index.tuples()
        ]
        if not tuples:
            return CodegreeSummary(tuples=0, min=0, max=0, mean=Fraction(0))
        smallest = min(degrees) if len(degrees) == tuples else 0
        return CodegreeSummary(
            tuples=tuples,
            min=smallest,
            max=max(degrees, default=0),
            mean=Fraction(graph.r * len(graph.edges), tuples),
        )

    @staticmethod
    def edge_count_certificate(graph: SimpleHypergraph, k: int = 0) -> EdgeCountCertificate:
        """
        Edge-count form via the lift: more than (1 − (k+1)/r)·n^r/r! edges force
        K_{r+1}^r − k in the lift; the witness is mapped back to vertices of G.
        """
        r, n = graph.r, graph.n
        threshold_edges = (1 - Fraction(k + 1, r)) * Fraction(n**r, factorial(r))
        exceeds = len(graph.edges) > threshold_edges
        lifted = LiftService.decaen_lift(graph)
        certificate = DegreeAnalysisService.threshold_check(lifted, k)

        image = None
        missing = None
        if certificate.witness is not None:
            image = [local for _, local in certificate.witness]
            if len(set(image)) == len(image):
                present = graph.edge_set
                missing = sum(
                    1 for subset in itertools.combinations(sorted(image), r) if subset not in present
                )
        violation = certificate.theorem_violation or (exceeds and certificate.witness is None)
        return EdgeCountCertificate(
            r=r,
            n=n,
            k=k,
            edges=len(graph.edges),
            threshold_edges=threshold_edges,
            exceeds=exceeds,
            lift=certificate,
            witness_in_graph=image,
            missing_in_graph=missing,
            theorem_violation=violation,
        )

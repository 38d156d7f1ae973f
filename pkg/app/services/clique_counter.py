"""
Clique Counting Service.

Counts transversals (one vertex per class) of an (r+1)-partite r-graph whose r+1
r-subsets are all edges, or all but at most k of them, weighted by the product of
their vertex weights.

Enumeration runs over prefixes in classes 0..r-1. The candidates in the last class
come from the completion index as a bitset: for a clique the prefix must be an edge
and the last vertex must complete every (r-1)-subtuple of the prefix, so one AND
per subtuple yields all of them at once.
"""

import itertools
import logging
import math
from fractions import Fraction
from multiprocessing import Pool
from typing import Optional, Sequence, Union

from app.core.config import get_settings
from app.core.errors import OutOfRangeError, ShapeError
from app.models.hypergraph import Edge, PartiteHypergraph, VertexId
from app.models.rational import format_rational
from app.schemas.reports import CliqueReport, NearCliqueQuery, TransversalEdge
from app.services.density import require_clique_shape
from app.services.neighbourhoods import CompletionIndex, bits_weight, iter_bits

logger = logging.getLogger(__name__)

ScanResult = tuple[Fraction, list[Edge], bool]


def _prefix_weight(graph: PartiteHypergraph, prefix: Sequence[VertexId]) -> Fraction:
    if graph.is_unweighted:
        return Fraction(1)
    return math.prod((graph.weight(v) for v in prefix), start=Fraction(1))


def _scan_cliques(
    graph: PartiteHypergraph,
    index: CompletionIndex,
    first: range,
    limit: int,
    stop_at_first: bool = False,
) -> ScanResult:
    """k = 0: every edge of P_r whose class-0 vertex lies in `first` is a prefix."""
    r = graph.r
    last = graph.vertices(r)
    full = (1 << len(last)) - 1
    total = Fraction(0)
    witnesses: list[Edge] = []
    truncated = False

    for e in graph.edges:
        if e[-1].class_index != r - 1 or e[0].local_index not in first:
            continue
        bits = full
        for pos in range(r):
            bits &= index.completions(e[:pos] + e[pos + 1:], r)
            if not bits:
                break
        if not bits:
            continue
        total += _prefix_weight(graph, e) * bits_weight(graph, r, bits)
        if limit:
            for u in iter_bits(bits):
                if len(witnesses) >= limit:
                    truncated = True
                    break
                witnesses.append(e + (last[u],))
        if stop_at_first and witnesses:
            break
    return total, witnesses, truncated


def _scan_near_cliques(
    graph: PartiteHypergraph,
    index: CompletionIndex,
    k: int,
    first: range,
    limit: int,
) -> ScanResult:
    """k > 0: all prefixes, counting missing r-subsets and pruning past k."""
    r = graph.r
    last = graph.vertices(r)
    head = [v for v in graph.vertices(0) if v.local_index in first]
    total = Fraction(0)
    witnesses: list[Edge] = []
    truncated = False

    for prefix in itertools.product(head, *(graph.vertices(c) for c in range(1, r))):
        missing = 0 if prefix in graph.edge_set else 1
        if missing > k:
            continue
        member = [index.completions(prefix[:pos] + prefix[pos + 1:], r) for pos in range(r)]
        chosen = 0
        for u in range(len(last)):
            absent = missing + sum(1 for bits in member if not (bits >> u) & 1)
            if absent <= k:
                chosen |= 1 << u
        if not chosen:
            continue
        total += _prefix_weight(graph, prefix) * bits_weight(graph, r, chosen)
        if limit:
            for u in iter_bits(chosen):
                if len(witnesses) >= limit:
                    truncated = True
                    break
                witnesses.append(prefix + (last[u],))
    return total, witnesses, truncated


def _scan_chunk(task: tuple[PartiteHypergraph, int, range, int]) -> ScanResult:
    graph, k, first, limit = task
    index = CompletionIndex(graph)
    if k == 0:
        return _scan_cliques(graph, index, first, limit)
    return _scan_near_cliques(graph, index, k, first, limit)


def _chunks(size: int, jobs: int) -> list[range]:
    if size == 0:
        return [range(0)]
    jobs = max(1, min(jobs, size))
    step = -(-size // jobs)
    return [range(lo, min(lo + step, size)) for lo in range(0, size, step)]


def weighted_count(graph: PartiteHypergraph, k: int = 0) -> Fraction:
    """Weighted number of transversals missing at most k edges; no logging, no witnesses."""
    require_clique_shape(graph)
    return _scan_chunk((graph, k, range(len(graph.classes[0])), 0))[0]


class CliqueService:
    """Exact clique and near-clique densities."""

    @staticmethod
    def count_near_cliques(
        graph: PartiteHypergraph,
        query: Union[NearCliqueQuery, int] = 0,
        with_witnesses: bool = False,
        max_witnesses: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> CliqueReport:
        """Weighted density of transversals missing at most k of their r+1 edges."""
        require_clique_shape(graph)
        k = query.k if isinstance(query, NearCliqueQuery) else int(query)
        if not (0 <= k <= graph.r + 1):
            raise OutOfRangeError(f"k must lie in [0, {graph.r + 1}], got {k}")

        settings = get_settings()
        limit = (max_witnesses if max_witnesses is not None else settings.MAX_WITNESSES) if with_witnesses else 0
        jobs = jobs or settings.DEFAULT_JOBS
        tasks = [(graph, k, chunk, limit) for chunk in _chunks(len(graph.classes[0]), jobs)]

        if len(tasks) > 1:
            with Pool(len(tasks)) as pool:
                parts = pool.map(_scan_chunk, tasks)
        else:
            parts = [_scan_chunk(task) for task in tasks]

        weighted = sum((part[0] for part in parts), Fraction(0))
        witnesses: list[Edge] = []
        truncated = any(part[2] for part in parts)
        for part in parts:
            witnesses.extend(part[1])
        if len(witnesses) > limit:
            witnesses, truncated = witnesses[:limit], True

        density = weighted / graph.total_weight(range(graph.t))
        logger.info(
            f"[CLIQUES] k={k} C={format_rational(density)} witnesses={len(witnesses)}"
            + (" (truncated)" if truncated else "")
        )
        return CliqueReport(
            clique_density=density,
            weighted_count=weighted,
            k=k,
            witnesses=[[tuple(v) for v in w] for w in witnesses] if with_witnesses else None,
            witnesses_truncated=truncated,
        )

    @staticmethod
    def clique_density(
        graph: PartiteHypergraph,
        with_witnesses: bool = False,
        max_witnesses: Optional[int] = None,
        jobs: Optional[int] = None,
    ) -> CliqueReport:
        """C(G): weighted share of transversals spanning K_{r+1}^r."""
        return CliqueService.count_near_cliques(graph, 0, with_witnesses, max_witnesses, jobs)

    @staticmethod
    def contains_clique(graph: PartiteHypergraph) -> Optional[Edge]:
        """Lexicographically least clique transversal, or None."""
        require_clique_shape(graph)
        index = CompletionIndex(graph)
        _, witnesses, _ = _scan_cliques(
            graph, index, range(len(graph.classes[0])), limit=1, stop_at_first=True
        )
        return witnesses[0] if witnesses else None

    @staticmethod
    def clique_transversals(graph: PartiteHypergraph) -> list[Edge]:
        """Every clique transversal, lexicographic."""
        require_clique_shape(graph)
        index = CompletionIndex(graph)
        everything = math.prod(graph.class_sizes)
        _, witnesses, _ = _scan_cliques(graph, index, range(len(graph.classes[0])), limit=everything)
        return witnesses

    @staticmethod
    def enumerate_transversal_edges(
        graph: PartiteHypergraph, transversal: Sequence[Sequence[int]]
    ) -> list[TransversalEdge]:
        """The r+1 r-subsets of a transversal, lexicographic, each marked present or absent."""
        require_clique_shape(graph)
        vertices = graph.canonical(transversal)
        if [v.class_index for v in vertices] != list(range(graph.t)):
            raise ShapeError("a transversal needs exactly one vertex in every class")
        return [
            TransversalEdge(vertices=[tuple(v) for v in subset], present=subset in graph.edge_set)
            for subset in itertools.combinations(vertices, graph.r)
        ]

    @staticmethod
    def transversal_edge_mass(graph: PartiteHypergraph) -> Fraction:
        """Sum over transversals H of w(H) times the number of edges of G inside H."""
        require_clique_shape(graph)
        total = Fraction(0)
        for transversal in itertools.product(*(graph.vertices(c) for c in range(graph.t))):
            present = sum(
                1 for subset in itertools.combinations(transversal, graph.r) if subset in graph.edge_set
            )
            if present:
                total += present * _prefix_weight(graph, transversal)
        return total

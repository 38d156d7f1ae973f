"""
Search Oracle.

Brute-force checks of the lower bound C(G) >= Σρ(i) − r on small (r+1)-partite
r-graphs. Densities and clique densities are recomputed here by plain enumeration,
independently of the density and clique services, and every scanned instance is
also run through the main engine; any disagreement is counted.

Instance streams are indexed: exhaustive instance m keeps the possible edges whose
bit is set in m, and random instance m draws from Random(seed * 1_000_003 + m). Both
can therefore be split into contiguous chunks and merged in index order.

The threshold-property scan walks a stream of strictly balanced instances the same way
and checks the balanced threshold for every k, plus S(e) <= r − 1 when no clique exists.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Iterable, Optional, Sequence

from app.core.config import get_settings
from app.core.errors import (
    BudgetExceededError,
    InfeasibleTargetError,
    OutOfRegimeError,
    ScaleError,
    ShapeError,
)
from app.models.hypergraph import Edge, PartiteHypergraph, SimpleHypergraph
from app.models.rational import format_rational, parse_rational
from app.schemas.constructions import TightnessReport, TightnessRow
from app.schemas.search import (
    BalancedSpace,
    BoundReport,
    BoundViolation,
    SearchSpace,
    ThresholdFailure,
    ThresholdPropertyReport,
)
from app.services.clique_counter import CliqueService, weighted_count
from app.services.degree_analysis import DegreeAnalysisService
from app.services.density import DensityService
from app.services.extremal_builder import ExtremalBuilderService
from app.services.instance_generator import InstanceGeneratorService
from app.services.instance_io import InstanceIOService

logger = logging.getLogger(__name__)

SEED_STRIDE = 1_000_003
MAX_REPORTED_VIOLATIONS = 100
GRID_VALUES = (Fraction(1), Fraction(9, 10), Fraction(4, 5), Fraction(3, 4))


# ─── Naive oracles ───────────────────────────────────────────────────


def _weight(graph: PartiteHypergraph, vertices: Iterable) -> Fraction:
    return math.prod((graph.weight(v) for v in vertices), start=Fraction(1))


def naive_density_vector(graph: PartiteHypergraph) -> list[Fraction]:
    """ρ(i) by summing over every partite r-tuple avoiding class i."""
    rho = []
    for i in range(graph.t):
        others = [c for c in range(graph.t) if c != i]
        mass = sum(
            (_weight(graph, t) for t in itertools.product(*(graph.vertices(c) for c in others))
             if t in graph.edge_set),
            Fraction(0),
        )
        rho.append(mass / math.prod((sum(graph.classes[c], Fraction(0)) for c in others), start=Fraction(1)))
    return rho


def naive_clique_density(graph: PartiteHypergraph, k: int = 0) -> Fraction:
    """C(G) (or its K − k variant) by testing every r-subset of every transversal."""
    total = Fraction(0)
    for transversal in itertools.product(*(graph.vertices(c) for c in range(graph.t))):
        missing = sum(
            1 for subset in itertools.combinations(transversal, graph.r) if subset not in graph.edge_set
        )
        if missing <= k:
            total += _weight(graph, transversal)
    return total / math.prod((sum(row, Fraction(0)) for row in graph.classes), start=Fraction(1))


def naive_contains_simple_clique(graph: SimpleHypergraph) -> bool:
    """Whether a plain r-graph contains K_{r+1}^r, by checking every (r+1)-set."""
    edges = graph.edge_set
    return any(
        all(subset in edges for subset in itertools.combinations(group, graph.r))
        for group in itertools.combinations(range(graph.n), graph.r + 1)
    )


# ─── Instance streams ────────────────────────────────────────────────


def possible_edges(r: int, class_sizes: Sequence[int]) -> list[Edge]:
    return list(PartiteHypergraph.unweighted(r, class_sizes).partite_tuples(r))


def exhaustive_instance(space: SearchSpace, possible: Sequence[Edge], index: int) -> PartiteHypergraph:
    edges = [e for bit, e in enumerate(possible) if (index >> bit) & 1]
    return PartiteHypergraph.unweighted(space.r, space.class_sizes, edges)


def random_instance(space: SearchSpace, possible: Sequence[Edge], index: int) -> PartiteHypergraph:
    rng = random.Random(space.seed * SEED_STRIDE + index)
    p = space.edge_probability
    edges = [e for e in possible if rng.randrange(p.denominator) < p.numerator]
    if space.weighted:
        d = space.max_denominator
        classes = [
            [Fraction(rng.randint(1, d), rng.randint(1, d)) for _ in range(size)]
            for size in space.class_sizes
        ]
        return PartiteHypergraph(space.r, classes, edges)
    return PartiteHypergraph.unweighted(space.r, space.class_sizes, edges)


# ─── Scanning ────────────────────────────────────────────────────────


@dataclass
class _Partial:
    checked: int = 0
    min_slack: Optional[Fraction] = None
    argmin: Optional[PartiteHypergraph] = None
    tight: int = 0
    disagreements: int = 0
    violations: list = field(default_factory=list)

    def merge(self, other: "_Partial") -> None:
        self.checked += other.checked
        if other.min_slack is not None and (self.min_slack is None or other.min_slack < self.min_slack):
            self.min_slack, self.argmin = other.min_slack, other.argmin
        self.tight += other.tight
        self.disagreements += other.disagreements
        self.violations.extend(other.violations)


def check_instance(graph: PartiteHypergraph, index: int, partial: _Partial) -> None:
    rho = naive_density_vector(graph)
    clique = naive_clique_density(graph)
    bound = sum(rho, Fraction(0)) - graph.r
    slack = clique - bound

    engine_rho = DensityService.density_vector(graph).rho
    engine_clique = weighted_count(graph) / graph.total_weight(range(graph.t))
    if engine_rho != rho or engine_clique != clique:
        partial.disagreements += 1
        logger.error(
            f"[ORACLE] instance {index}: naive C={format_rational(clique)} vs engine "
            f"C={format_rational(engine_clique)}"
        )

    partial.checked += 1
    if slack == 0:
        partial.tight += 1
    if partial.min_slack is None or slack < partial.min_slack:
        partial.min_slack, partial.argmin = slack, graph
    if slack < 0:
        logger.error(f"[ORACLE] instance {index} violates the bound: C={clique} < {bound}")
        partial.violations.append(BoundViolation(
            index=index,
            instance=InstanceIOService.to_document(graph),
            rho=rho,
            clique_density=clique,
            lower_bound=bound,
        ))


def _scan_range(task: tuple[SearchSpace, int, int]) -> _Partial:
    space, start, stop = task
    possible = possible_edges(space.r, space.class_sizes)
    build = exhaustive_instance if space.mode == "exhaustive" else random_instance
    partial = _Partial()
    for index in range(start, stop):
        check_instance(build(space, possible, index), index, partial)
        if (index - start + 1) % 10_000 == 0:
            logger.debug(f"[ORACLE] chunk {start}-{stop}: {index - start + 1} instances")
    return partial


def _run_scan(space: SearchSpace, total: int, jobs: Optional[int]) -> BoundReport:
    jobs = max(1, jobs or get_settings().DEFAULT_JOBS)
    step = max(1, -(-total // jobs))
    tasks = [(space, lo, min(lo + step, total)) for lo in range(0, total, step)]

    if len(tasks) > 1:
        with Pool(len(tasks)) as pool:
            parts = pool.map(_scan_range, tasks)
    else:
        parts = [_scan_range(task) for task in tasks]

    merged = _Partial()
    for part in parts:
        merged.merge(part)

    report = BoundReport(
        space=space,
        instances_checked=merged.checked,
        min_slack=merged.min_slack,
        argmin_instance=InstanceIOService.to_document(merged.argmin) if merged.argmin is not None else None,
        tight_instances=merged.tight,
        violations=merged.violations[:MAX_REPORTED_VIOLATIONS],
        oracle_disagreements=merged.disagreements,
    )
    logger.info(
        f"[VERIFY] {report.instances_checked} instances, {len(merged.violations)} violations, "
        f"{merged.disagreements} disagreements, min slack "
        f"{format_rational(merged.min_slack) if merged.min_slack is not None else '-'}"
    )
    return report


# ─── Balanced threshold property ─────────────────────────────────────


@dataclass
class _ThresholdPartial:
    r: int
    checked: int = 0
    required: list = field(default_factory=list)
    found: list = field(default_factory=list)
    clique_free: int = 0
    max_edge_sum: Optional[Fraction] = None
    failures: list = field(default_factory=list)

    def __post_init__(self):
        self.required = self.required or [0] * self.r
        self.found = self.found or [0] * self.r

    def fail(self, graph: PartiteHypergraph, index: int, reason: str, k=None, margin=None) -> None:
        logger.error(f"[THRESHOLD-SCAN] instance {index}: {reason}")
        self.failures.append(ThresholdFailure(
            index=index, k=k, margin=margin, reason=reason, instance=InstanceIOService.to_document(graph)
        ))

    def merge(self, other: "_ThresholdPartial") -> None:
        self.checked += other.checked
        self.required = [a + b for a, b in zip(self.required, other.required)]
        self.found = [a + b for a, b in zip(self.found, other.found)]
        self.clique_free += other.clique_free
        if other.max_edge_sum is not None and (self.max_edge_sum is None or other.max_edge_sum > self.max_edge_sum):
            self.max_edge_sum = other.max_edge_sum
        self.failures.extend(other.failures)


def check_balanced_instance(graph: PartiteHypergraph, index: int, partial: _ThresholdPartial) -> None:
    """Every k above threshold needs a K − k witness; clique-free graphs need S(e) <= r − 1."""
    r = graph.r
    partial.checked += 1
    if not DegreeAnalysisService.is_strictly_balanced(graph, r - 1).balanced:
        partial.fail(graph, index, "generated instance is not strictly balanced")
        return

    rho = DensityService.density_vector(graph)
    max_sum = rho.total - min(rho.rho)
    for k in range(r):
        margin = max_sum - (r - k - 1)
        if margin <= 0:
            continue
        partial.required[k] += 1
        witness = DegreeAnalysisService.threshold_check(graph, k).witness
        if witness is None:
            partial.fail(graph, index, "no witness above the threshold", k, margin)
            continue
        absent = sum(1 for t in CliqueService.enumerate_transversal_edges(graph, witness) if not t.present)
        if absent > k:
            partial.fail(graph, index, f"witness misses {absent} > {k} edges", k, margin)
            continue
        partial.found[k] += 1

    if CliqueService.contains_clique(graph) is None:
        partial.clique_free += 1
        certificate = DegreeAnalysisService.threshold_check(graph, 0, all_classes=True)
        top = max((s.s for rows in certificate.all_classes.values() for s in rows), default=None)
        if top is None:
            return
        if partial.max_edge_sum is None or top > partial.max_edge_sum:
            partial.max_edge_sum = top
        if top > r - 1:
            partial.fail(graph, index, f"clique-free instance has S(e) = {format_rational(top)} > {r - 1}")


def _threshold_range(task: tuple[BalancedSpace, int, int]) -> _ThresholdPartial:
    space, start, stop = task
    partial = _ThresholdPartial(r=space.r)
    for index in range(start, stop):
        graph = InstanceGeneratorService.balanced_instance_generator(
            space.r, space.class_size, space.seed * SEED_STRIDE + index
        )
        check_balanced_instance(graph, index, partial)
    return partial


def _validate_space(space: SearchSpace) -> None:
    if len(space.class_sizes) != space.r + 1:
        raise ShapeError(f"need r+1 = {space.r + 1} class sizes, got {len(space.class_sizes)}")
    if not (0 <= space.edge_probability <= 1):
        raise ShapeError(f"edge probability {space.edge_probability} is outside [0, 1]")


class SearchOracleService:

    @staticmethod
    def exhaustive_bound_scan(space: SearchSpace, jobs: Optional[int] = None, budget: Optional[int] = None) -> BoundReport:
        """Every edge subset of the complete (r+1)-partite r-graph with the given class sizes."""
        _validate_space(space)
        budget = budget or get_settings().EXHAUSTIVE_BUDGET
        count = len(possible_edges(space.r, space.class_sizes))
        required = 1 << count
        if required > budget:
            raise BudgetExceededError(
                f"{count} possible edges give 2^{count} = {required} instances, budget is {budget}",
                required_budget=required,
            )
        return _run_scan(space.model_copy(update={"mode": "exhaustive"}), required, jobs)

    @staticmethod
    def random_bound_scan(space: SearchSpace, jobs: Optional[int] = None) -> BoundReport:
        """`space.trials` seeded random instances, optionally with random weights."""
        _validate_space(space)
        return _run_scan(space.model_copy(update={"mode": "random"}), space.trials, jobs)

    @staticmethod
    def tightness_probe(r: int, rho_grid: Optional[Iterable[Sequence]] = None) -> TightnessReport:
        """Build the extremal graph for each grid point and compare C with Σρ − r."""
        grid = list(rho_grid) if rho_grid is not None else default_tightness_grid(r)
        rows = []
        for point in grid:
            values = [parse_rational(v) for v in point]
            try:
                _, recipe = ExtremalBuilderService.build_extremal(r, values)
            except (OutOfRegimeError, InfeasibleTargetError, ScaleError, ShapeError) as e:
                logger.warning(f"[TIGHTNESS] skipped {[format_rational(v) for v in values]}: {e}")
                rows.append(TightnessRow(rho=values, skipped=True, note=str(e)))
                continue
            bound = sum(recipe.achieved_densities, Fraction(0)) - r
            rows.append(TightnessRow(
                rho=values,
                achieved=recipe.achieved_densities,
                clique_density=recipe.clique_density,
                lower_bound=bound,
                slack=recipe.clique_density - bound,
            ))
        all_tight = all(row.slack == 0 for row in rows if not row.skipped)
        logger.info(f"[TIGHTNESS] r={r}: {len(rows)} points, all tight: {all_tight}")
        return TightnessReport(r=r, rows=rows, all_tight=all_tight)

    @staticmethod
    def threshold_property_scan(space: BalancedSpace, jobs: Optional[int] = None) -> ThresholdPropertyReport:
        """
        Runs the balanced threshold over a stream of strictly balanced instances.

        Args:
            space: uniformity, class size, seed and number of instances.
            jobs: worker processes; chunks are merged in index order, so the report
                does not depend on it.

        Returns:
            Witness counts per k, the largest S(e) over clique-free instances and up to
            MAX_REPORTED_VIOLATIONS failures. `passed` is False on any failure.
        """
        total = space.count
        jobs = max(1, jobs or get_settings().DEFAULT_JOBS)
        step = max(1, -(-total // jobs))
        tasks = [(space, lo, min(lo + step, total)) for lo in range(0, total, step)]
        if len(tasks) > 1:
            with Pool(len(tasks)) as pool:
                parts = pool.map(_threshold_range, tasks)
        else:
            parts = [_threshold_range(task) for task in tasks]

        merged = _ThresholdPartial(r=space.r)
        for part in parts:
            merged.merge(part)

        report = ThresholdPropertyReport(
            space=space,
            instances_checked=merged.checked,
            witnesses_required=merged.required,
            witnesses_found=merged.found,
            clique_free_instances=merged.clique_free,
            max_clique_free_edge_sum=merged.max_edge_sum,
            failure_count=len(merged.failures),
            failures=merged.failures[:MAX_REPORTED_VIOLATIONS],
            passed=not merged.failures,
        )
        logger.info(
            f"[THRESHOLD-SCAN] r={space.r} size={space.class_size}: {merged.checked} instances, "
            f"witnesses {merged.found}/{merged.required}, {merged.clique_free} clique-free, "
            f"{len(merged.failures)} failures"
        )
        return report


def default_tightness_grid(r: int) -> list[list[Fraction]]:
    """Non-increasing vectors over {1, 9/10, 4/5, 3/4} with Σρ >= r."""
    return [
        list(point)
        for point in itertools.combinations_with_replacement(GRID_VALUES, r + 1)
        if sum(point) >= r
    ]

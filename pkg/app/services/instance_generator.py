"""
Balanced Instance Generator.

Produces (r+1)-partite r-graphs whose partite (r−1)-tuples all have strictly balanced
codegrees: lifts of random r-graphs, complete graphs, unions of two lifts on
disjoint vertex ranges, and lifts with the vertices of each class shuffled.
Every class has exactly `class_size` vertices.
"""

import itertools
import logging
import random
from typing import Iterator

from app.core.errors import OutOfRangeError
from app.models.hypergraph import PartiteHypergraph, SimpleHypergraph
from app.services.lift import LiftService

logger = logging.getLogger(__name__)

KINDS = ("lift", "complete", "union", "shuffled")
EDGE_PROBABILITIES = ((1, 4), (1, 2), (3, 4), (9, 10))


def random_simple_graph(rng: random.Random, r: int, n: int) -> SimpleHypergraph:
    num, den = rng.choice(EDGE_PROBABILITIES)
    edges = [e for e in itertools.combinations(range(n), r) if rng.randrange(den) < num]
    return SimpleHypergraph.from_edges(r, n, edges)


class InstanceGeneratorService:

    @staticmethod
    def balanced_instance_generator(r: int, class_size: int, seed: int) -> PartiteHypergraph:
        """One strictly balanced instance; the kind is drawn from the seed."""
        if r < 2 or class_size < 1:
            raise OutOfRangeError(f"need r >= 2 and class_size >= 1, got r={r}, class_size={class_size}")
        rng = random.Random(seed)
        kind = rng.choice(KINDS)
        if kind == "union" and class_size < 2:
            kind = "lift"

        if kind == "complete":
            graph = PartiteHypergraph.complete(r, [class_size] * (r + 1))
        elif kind == "union":
            split = rng.randint(1, class_size - 1)
            first = LiftService.decaen_lift(random_simple_graph(rng, r, split))
            second = LiftService.decaen_lift(random_simple_graph(rng, r, class_size - split))
            shifted = [[(v.class_index, v.local_index + split) for v in e] for e in second.edges]
            graph = PartiteHypergraph.unweighted(r, [class_size] * (r + 1), [*first.edges, *shifted])
        else:
            graph = LiftService.decaen_lift(random_simple_graph(rng, r, class_size))
            if kind == "shuffled":
                orders = []
                for _ in range(r + 1):
                    order = list(range(class_size))
                    rng.shuffle(order)
                    orders.append(order)
                graph = PartiteHypergraph.unweighted(
                    r,
                    graph.class_sizes,
                    [[(v.class_index, orders[v.class_index][v.local_index]) for v in e] for e in graph.edges],
                )

        logger.debug(f"[GENERATOR] seed={seed} kind={kind} {graph}")
        return graph

    @staticmethod
    def balanced_instances(r: int, class_size: int, seed: int, count: int) -> Iterator[PartiteHypergraph]:
        for index in range(count):
            yield InstanceGeneratorService.balanced_instance_generator(r, class_size, seed * 1_000_003 + index)

"""
Blow-up Service.

Each class is first normalised by its lightest vertex, so the lightest vertex of
class c gets exactly s_c unit-weight clones and vertex v gets w(v)/min_c·s_c of them.
Every edge becomes all transversal combinations of clones. Densities and the clique
density are unchanged because all weights of a class are multiplied by the same factor.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Sequence, Union

from app.core.config import get_settings
from app.core.errors import OutOfRangeError, ScaleError
from app.models.hypergraph import PartiteHypergraph

logger = logging.getLogger(__name__)

Scale = Union[int, Sequence[int]]


def _relative_weights(row: Sequence[Fraction]) -> list[Fraction]:
    lightest = min(row)
    return [w / lightest for w in row]


class BlowUpService:
    """Weighted -> unweighted conversion by vertex cloning."""

    @staticmethod
    def minimal_scales(graph: PartiteHypergraph) -> list[int]:
        """Per class: the least s making every normalised multiplicity integral."""
        return [math.lcm(*(m.denominator for m in _relative_weights(row))) for row in graph.classes]

    @staticmethod
    def minimal_scale(graph: PartiteHypergraph) -> int:
        """Least global scale that is valid for every class."""
        return math.lcm(*BlowUpService.minimal_scales(graph))

    @staticmethod
    def blown_sizes(graph: PartiteHypergraph, scale: Scale) -> list[int]:
        """Class sizes blow_up(graph, scale) would produce, without building it."""
        return [sum(row) for row in BlowUpService.multiplicities(graph, scale)]

    @staticmethod
    def multiplicities(graph: PartiteHypergraph, scale: Scale) -> list[list[int]]:
        """
        Number of clones of every vertex.

        Args:
            graph: weighted instance.
            scale: one positive integer for all classes, or one per class.

        Returns:
            counts[c][i], the clones of vertex (c, i).

        Raises:
            ScaleError: a multiplicity is not an integer; carries the minimal valid scale
                in the same shape (int or per-class list) as `scale`.
        """
        scales = BlowUpService._per_class(graph, scale)
        counts = []
        for c, (row, s) in enumerate(zip(graph.classes, scales)):
            copies = []
            for i, relative in enumerate(_relative_weights(row)):
                m = relative * s
                if m.denominator != 1:
                    raise ScaleError(
                        f"scale {s} leaves vertex ({c},{i}) with {m} copies",
                        minimal_scale=BlowUpService.minimal_scales(graph)
                        if not isinstance(scale, int)
                        else BlowUpService.minimal_scale(graph),
                    )
                copies.append(int(m))
            counts.append(copies)
        return counts

    @staticmethod
    def blow_up(graph: PartiteHypergraph, scale: Scale = 1) -> PartiteHypergraph:
        """Unweighted graph with w(v)/min_c·s_c clones of each vertex v of class c."""
        counts = BlowUpService.multiplicities(graph, scale)
        limit = get_settings().MAX_CLASS_SCALE
        sizes = [sum(row) for row in counts]
        if any(size > limit for size in sizes):
            raise ScaleError(f"blow-up would create classes of sizes {sizes}, above {limit}")

        # clones of vertex (c, i) occupy a contiguous block of local indices
        offsets = [list(itertools.accumulate(row, initial=0)) for row in counts]
        edges = []
        for e in graph.edges:
            ranges = [
                [(v.class_index, j) for j in range(offsets[v.class_index][v.local_index],
                                                   offsets[v.class_index][v.local_index + 1])]
                for v in e
            ]
            edges.extend(itertools.product(*ranges))

        logger.debug("[BLOW-UP] %s -> class sizes %s, %d edges", graph, sizes, len(edges))
        return PartiteHypergraph.unweighted(graph.r, sizes, edges)

    @staticmethod
    def _per_class(graph: PartiteHypergraph, scale: Scale) -> list[int]:
        scales = [scale] * graph.t if isinstance(scale, int) else list(scale)
        if len(scales) != graph.t:
            raise OutOfRangeError(f"expected {graph.t} per-class scales, got {len(scales)}")
        if any(s < 1 for s in scales):
            raise OutOfRangeError(f"scales must be positive integers, got {scales}")
        return scales

"""
Completion index.

For every partite (r-1)-tuple g that lies in some edge, and every class j it misses,
stores the set of local indices u in V_j with g + u an edge, as an int bitset. Clique
counting and codegree analysis both read from it.
"""

from collections import defaultdict
from fractions import Fraction
from typing import Iterator, Sequence

from app.models.hypergraph import Edge, PartiteHypergraph, VertexId


def iter_bits(bits: int) -> Iterator[int]:
    """Set bit positions, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_weight(graph: PartiteHypergraph, class_index: int, bits: int) -> Fraction:
    """Total weight of the vertices of a class selected by a bitset."""
    if graph.is_unweighted:
        return Fraction(bits.bit_count())
    row = graph.classes[class_index]
    return sum((row[i] for i in iter_bits(bits)), Fraction(0))


class CompletionIndex:
    """(r-1)-tuple -> class -> bitset of completing vertices."""

    __slots__ = ("graph", "_table")

    def __init__(self, graph: PartiteHypergraph):
        self.graph = graph
        table: dict[Edge, dict[int, int]] = defaultdict(dict)
        for e in graph.edges:
            for pos, v in enumerate(e):
                g = e[:pos] + e[pos + 1:]
                slot = table[g]
                slot[v.class_index] = slot.get(v.class_index, 0) | (1 << v.local_index)
        self._table = dict(table)

    def completions(self, g: Sequence[VertexId], class_index: int) -> int:
        slot = self._table.get(tuple(g))
        if slot is None:
            return 0
        return slot.get(class_index, 0)

    def degree(self, g: Sequence[VertexId], class_index: int) -> int:
        return self.completions(g, class_index).bit_count()

    def tuples(self) -> Iterator[Edge]:
        """(r-1)-tuples with at least one completion, sorted."""
        return iter(sorted(self._table))

    def __len__(self) -> int:
        return len(self._table)

"""
Weighted multipartite r-uniform hypergraphs.

A PartiteHypergraph is an immutable value: ordered vertex classes, each a tuple of
strictly positive rational weights, and a canonical sorted tuple of edges. An edge is
a tuple of r VertexIds sorted by (class_index, local_index), at most one per class.
Unweighted graphs are simply the case where every weight is 1.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from app.core.errors import (
    DuplicateEdgeError,
    InvalidSelectorError,
    InvalidWeightError,
    LiftValidationError,
    NonPartiteEdgeError,
    NotFoundError,
    ShapeError,
)


class VertexId(NamedTuple):
    class_index: int
    local_index: int


Edge = tuple[VertexId, ...]


def edge_classes(edge: Edge) -> tuple[int, ...]:
    return tuple(v.class_index for v in edge)


class PartiteHypergraph:
    """r-graph on t >= r labelled vertex classes with rational vertex weights."""

    __slots__ = ("r", "classes", "edges", "_edge_set", "_vertex_table", "_hash")

    def __init__(
        self,
        r: int,
        classes: Sequence[Sequence[Fraction]],
        edges: Iterable[Iterable[Sequence[int]]] = (),
    ):
        if r < 2:
            raise ShapeError(f"uniformity must be at least 2, got {r}")
        if len(classes) < r:
            raise ShapeError(f"need at least r={r} classes, got {len(classes)}")

        normalized: list[tuple[Fraction, ...]] = []
        for c, weights in enumerate(classes):
            if len(weights) == 0:
                raise ShapeError(f"class {c} has no vertices")
            row = []
            for i, w in enumerate(weights):
                w = Fraction(w)
                if w <= 0:
                    raise InvalidWeightError(f"weight of vertex ({c},{i}) must be positive, got {w}")
                row.append(w)
            normalized.append(tuple(row))

        self.r = r
        self.classes: tuple[tuple[Fraction, ...], ...] = tuple(normalized)
        self._vertex_table = tuple(
            tuple(VertexId(c, i) for i in range(len(row))) for c, row in enumerate(self.classes)
        )

        seen: set[Edge] = set()
        for raw in edges:
            edge = self._canonical_edge(raw)
            if edge in seen:
                raise DuplicateEdgeError(f"duplicate edge {format_edge(edge)}")
            seen.add(edge)

        self._edge_set = frozenset(seen)
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._hash: Optional[int] = None

    # ─── Construction helpers ────────────────────────────────────────

    def _canonical_edge(self, raw: Iterable[Sequence[int]]) -> Edge:
        vertices = []
        for item in raw:
            c, i = int(item[0]), int(item[1])
            if not (0 <= c < len(self.classes)) or not (0 <= i < len(self.classes[c])):
                raise NotFoundError(f"vertex ({c},{i}) does not exist")
            vertices.append(self._vertex_table[c][i])
        if len(vertices) != self.r:
            raise ShapeError(f"edge has {len(vertices)} vertices, expected {self.r}")
        vertices.sort()
        if len({v.class_index for v in vertices}) != len(vertices):
            raise NonPartiteEdgeError(f"edge {format_edge(tuple(vertices))} meets a class twice")
        return tuple(vertices)

    @classmethod
    def unweighted(cls, r: int, class_sizes: Sequence[int], edges: Iterable = ()) -> "PartiteHypergraph":
        return cls(r, [[Fraction(1)] * size for size in class_sizes], edges)

    @classmethod
    def complete(cls, r: int, class_sizes: Sequence[int]) -> "PartiteHypergraph":
        """Every partite r-tuple is an edge."""
        graph = cls.unweighted(r, class_sizes)
        return graph.with_edges(graph.partite_tuples(r))

    def with_edges(self, extra: Iterable[Iterable[Sequence[int]]]) -> "PartiteHypergraph":
        return PartiteHypergraph(self.r, self.classes, itertools.chain(self.edges, extra))

    def with_weights(self, classes: Sequence[Sequence[Fraction]]) -> "PartiteHypergraph":
        if [len(c) for c in classes] != list(self.class_sizes):
            raise ShapeError("new weights must keep every class size")
        return PartiteHypergraph(self.r, classes, self.edges)

    # ─── Accessors ───────────────────────────────────────────────────

    @property
    def t(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def edge_set(self) -> frozenset:
        return self._edge_set

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for row in self.classes for w in row)

    def vertex(self, class_index: int, local_index: int) -> VertexId:
        return self._vertex_table[class_index][local_index]

    def vertices(self, class_index: int) -> tuple[VertexId, ...]:
        return self._vertex_table[class_index]

    def weight(self, v: VertexId) -> Fraction:
        return self.classes[v.class_index][v.local_index]

    def class_weight(self, class_index: int) -> Fraction:
        return sum(self.classes[class_index], Fraction(0))

    def class_weights(self) -> tuple[Fraction, ...]:
        return tuple(self.class_weight(c) for c in range(self.t))

    def total_weight(self, class_indices: Iterable[int]) -> Fraction:
        """Product of w(V_c) over the given classes."""
        return math.prod((self.class_weight(c) for c in class_indices), start=Fraction(1))

    def has_edge(self, vertices: Iterable[Sequence[int]]) -> bool:
        key = tuple(sorted(self._vertex_table[v[0]][v[1]] for v in vertices))
        return key in self._edge_set

    def canonical(self, vertices: Iterable[Sequence[int]]) -> tuple[VertexId, ...]:
        """Canonical (sorted, interned) form of a vertex collection; validates ids."""
        out = []
        for item in vertices:
            c, i = int(item[0]), int(item[1])
            if not (0 <= c < self.t) or not (0 <= i < len(self.classes[c])):
                raise NotFoundError(f"vertex ({c},{i}) does not exist")
            out.append(self._vertex_table[c][i])
        return tuple(sorted(out))

    def partite_tuples(self, size: int, class_indices: Optional[Sequence[int]] = None) -> Iterator[Edge]:
        """All partite tuples of the given size, lexicographic order."""
        pool = range(self.t) if class_indices is None else sorted(class_indices)
        for chosen in itertools.combinations(pool, size):
            yield from itertools.product(*(self._vertex_table[c] for c in chosen))

    # ─── Value semantics ─────────────────────────────────────────────

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartiteHypergraph):
            return NotImplemented
        return self.r == other.r and self.classes == other.classes and self.edges == other.edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.r, self.classes, self.edges))
        return self._hash

    def __reduce__(self):
        # pickled for multiprocessing workers
        return (PartiteHypergraph, (self.r, self.classes, self.edges))

    def __repr__(self) -> str:
        return f"<PartiteHypergraph(r={self.r}, classes={list(self.class_sizes)}, edges={len(self.edges)})>"


def format_edge(edge: Sequence[VertexId]) -> str:
    return "{" + ",".join(f"({v[0]},{v[1]})" for v in edge) + "}"


@dataclass(frozen=True)
class ClassSubsetSelector:
    """The set I of omitted class indices defining P_I."""

    omitted_indices: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, *indices: int) -> "ClassSubsetSelector":
        return cls(frozenset(indices))

    def validate(self, graph: PartiteHypergraph) -> None:
        for i in self.omitted_indices:
            if not (0 <= i < graph.t):
                raise InvalidSelectorError(f"class index {i} out of range for t={graph.t}")
        if graph.t - len(self.omitted_indices) < graph.r:
            raise InvalidSelectorError(
                f"omitting {len(self.omitted_indices)} of {graph.t} classes leaves fewer than r={graph.r}"
            )

    def kept(self, graph: PartiteHypergraph) -> list[int]:
        return [c for c in range(graph.t) if c not in self.omitted_indices]


@dataclass(frozen=True)
class SimpleHypergraph:
    """Plain (non-partite, unweighted) r-graph on vertices 0..n-1."""

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 2:
            raise LiftValidationError(f"uniformity must be at least 2, got {self.r}")
        if self.n < 0:
            raise LiftValidationError("vertex count must be non-negative")
        canonical = set()
        for e in self.edges:
            if len(set(e)) != len(e):
                raise LiftValidationError(f"edge {list(e)} repeats a vertex")
            if len(e) != self.r:
                raise LiftValidationError(f"edge {list(e)} has {len(e)} vertices, expected {self.r}")
            if any(not (0 <= v < self.n) for v in e):
                raise LiftValidationError(f"edge {list(e)} uses a vertex outside 0..{self.n - 1}")
            key = tuple(sorted(e))
            if key in canonical:
                raise LiftValidationError(f"edge {list(key)} listed twice")
            canonical.add(key)
        object.__setattr__(self, "edges", tuple(sorted(canonical)))

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Iterable[int]]) -> "SimpleHypergraph":
        return cls(r, n, tuple(tuple(e) for e in edges))

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

"""
Instance I/O Service.

JSON instance files:
    {"r": 3, "classes": [{"weights": ["1/2", "1"]}, ...], "edges": [[[0, 0], [1, 0], [2, 1]], ...]}
and plain r-graph files (input of the lift):
    {"r": 2, "n": 3, "edges": [[0, 1], [1, 2]]}

Structural faults are reported with a JSON path (edges[3]); syntax faults with
line and column.
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel

from app.core.errors import (
    DuplicateEdgeError,
    InvalidWeightError,
    MalformedJsonError,
    NonPartiteEdgeError,
    SchemaError,
)
from app.models.hypergraph import PartiteHypergraph, SimpleHypergraph
from app.models.rational import format_rational, parse_rational
from app.schemas.hypergraph import ClassDocument, InstanceDocument, SimpleGraphDocument

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJsonError(e.msg, f"{source}:{e.lineno}:{e.colno}") from e


def _read_text(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MalformedJsonError(f"invalid UTF-8 ({e.reason})", f"{path}:byte {e.start}") from e


def _require_int(value: Any, context: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", context)
    if value < minimum:
        raise SchemaError(f"expected an integer >= {minimum}, got {value}", context)
    return value


def _require_list(value: Any, context: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"expected a list, got {type(value).__name__}", context)
    return value


class InstanceIOService:
    """Parsing and canonical serialisation of instance documents."""

    @staticmethod
    def parse_instance(data: Any) -> PartiteHypergraph:
        """Validate a decoded JSON document and build the graph."""
        if not isinstance(data, dict):
            raise SchemaError("instance must be a JSON object", "$")
        for key in ("r", "classes"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}", "$")
        r = _require_int(data["r"], "r", minimum=2)

        classes = []
        for c, entry in enumerate(_require_list(data["classes"], "classes")):
            if not isinstance(entry, dict) or "weights" not in entry:
                raise SchemaError("class must be an object with 'weights'", f"classes[{c}]")
            row = []
            for i, raw in enumerate(_require_list(entry["weights"], f"classes[{c}].weights")):
                where = f"classes[{c}].weights[{i}]"
                w = parse_rational(raw, where)
                if w <= 0:
                    raise InvalidWeightError(f"weight must be strictly positive, got {raw!r}", where)
                row.append(w)
            if not row:
                raise SchemaError("class needs at least one vertex", f"classes[{c}].weights")
            classes.append(row)
        if len(classes) < r:
            raise SchemaError(f"need at least r={r} classes, got {len(classes)}", "classes")

        edges = []
        seen = set()
        for k, raw_edge in enumerate(_require_list(data.get("edges", []), "edges")):
            where = f"edges[{k}]"
            raw_edge = _require_list(raw_edge, where)
            if len(raw_edge) != r:
                raise SchemaError(f"edge has {len(raw_edge)} vertices, expected {r}", where)
            vertices = []
            for m, ref in enumerate(raw_edge):
                ref = _require_list(ref, f"{where}[{m}]")
                if len(ref) != 2:
                    raise SchemaError("vertex must be [class_index, local_index]", f"{where}[{m}]")
                c = _require_int(ref[0], f"{where}[{m}][0]")
                i = _require_int(ref[1], f"{where}[{m}][1]")
                if c >= len(classes) or i >= len(classes[c]):
                    raise SchemaError(f"vertex ({c},{i}) does not exist", f"{where}[{m}]")
                vertices.append((c, i))
            if len({c for c, _ in vertices}) != len(vertices):
                raise NonPartiteEdgeError("edge meets a class twice", where)
            key = tuple(sorted(vertices))
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {list(key)}", where)
            seen.add(key)
            edges.append(key)

        return PartiteHypergraph(r, classes, edges)

    @staticmethod
    def to_document(graph: PartiteHypergraph) -> InstanceDocument:
        return InstanceDocument(
            r=graph.r,
            classes=[ClassDocument(weights=[format_rational(w) for w in row]) for row in graph.classes],
            edges=[[[v.class_index, v.local_index] for v in e] for e in graph.edges],
        )

    @staticmethod
    def loads_instance(text: str, source: str = "<string>") -> PartiteHypergraph:
        return InstanceIOService.parse_instance(_load_json(text, source))

    @staticmethod
    def dumps_instance(graph: PartiteHypergraph) -> str:
        return InstanceIOService.to_document(graph).model_dump_json(indent=2) + "\n"

    @staticmethod
    def read_instance(path: PathLike) -> PartiteHypergraph:
        path = Path(path)
        graph = InstanceIOService.loads_instance(_read_text(path), str(path))
        logger.info(f"[IO] read {path}: {graph}")
        return graph

    @staticmethod
    def write_instance(graph: PartiteHypergraph, path: PathLike) -> None:
        path = Path(path)
        path.write_text(InstanceIOService.dumps_instance(graph), encoding="utf-8")
        logger.info(f"[IO] wrote {path}: {graph}")

    # ─── Plain r-graphs ───────────────────────────────────────────────

    @staticmethod
    def parse_simple_graph(data: Any) -> SimpleHypergraph:
        if not isinstance(data, dict):
            raise SchemaError("graph must be a JSON object", "$")
        for key in ("r", "n"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}", "$")
        r = _require_int(data["r"], "r", minimum=2)
        n = _require_int(data["n"], "n")
        edges = []
        for k, raw in enumerate(_require_list(data.get("edges", []), "edges")):
            raw = _require_list(raw, f"edges[{k}]")
            edges.append(tuple(_require_int(v, f"edges[{k}][{m}]") for m, v in enumerate(raw)))
        # repeated vertices and out-of-range ids raise LiftValidationError
        return SimpleHypergraph.from_edges(r, n, edges)

    @staticmethod
    def loads_simple_graph(text: str, source: str = "<string>") -> SimpleHypergraph:
        return InstanceIOService.parse_simple_graph(_load_json(text, source))

    @staticmethod
    def read_simple_graph(path: PathLike) -> SimpleHypergraph:
        path = Path(path)
        return InstanceIOService.loads_simple_graph(_read_text(path), str(path))

    @staticmethod
    def simple_graph_document(graph: SimpleHypergraph) -> SimpleGraphDocument:
        return SimpleGraphDocument(r=graph.r, n=graph.n, edges=[list(e) for e in graph.edges])

    # ─── Reports ──────────────────────────────────────────────────────

    @staticmethod
    def write_model(model: BaseModel, path: PathLike) -> None:
        """Canonical JSON for any report or recipe."""
        Path(path).write_text(model.model_dump_json(by_alias=True, indent=2) + "\n", encoding="utf-8")

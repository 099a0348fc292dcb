"""Serializers for converting between the JSON file formats and plane graph models."""

import json
import math
import re
from collections.abc import Mapping
from typing import Any

from pytutte.domain.errors import ParseError
from pytutte.domain.models.embedding import Point, TriangulationResult
from pytutte.domain.models.plane_graph import PlaneGraph

GRAPH_FIELDS = frozenset({"vertices", "rotation", "outer_cycle"})
# written by the triangulate command, so its output can be fed back in
OPTIONAL_GRAPH_FIELDS = frozenset({"added_edges"})
COORDS_FIELDS = frozenset({"coords"})
OPTIONAL_COORDS_FIELDS = frozenset({"residual", "delta", "validation", "weights", "placement"})


def dumps(data: Any) -> str:
    """Encode a JSON document with sorted keys, the stable form of every file the toolkit writes."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_json(text: str, source: str = "<input>") -> Any:
    """
    Decode a JSON document.

    Args:
        text: The document.
        source: File name used in error messages.

    Returns:
        The decoded document.

    Raises:
        ParseError: The text is not valid JSON.

    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, source, e.lineno) from e


def _line_of(text: str, field: str) -> int | None:
    match = re.search(rf'"{re.escape(field)}"\s*:', text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def _require_object(data: Any, source: str, what: str) -> dict[str, Any]:
    if not isinstance(data, dict):
        raise ParseError(f"{what} must be a JSON object", source, 1)
    return data


def _check_fields(
    data: Mapping[str, Any], required: frozenset[str], optional: frozenset[str], text: str, source: str
) -> None:
    for field in sorted(set(data) - required - optional):
        raise ParseError("unknown field", source, _line_of(text, field), field)
    for field in sorted(required - set(data)):
        raise ParseError("missing required field", source, None, field)


def _string_list(value: Any, text: str, source: str, field: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise ParseError("expected a list of vertex ids (strings)", source, _line_of(text, field), field)
    return value


def deserialize_graph(data: Any, text: str = "", source: str = "<input>") -> PlaneGraph:
    """
    Build a plane graph from a decoded graph document.

    Args:
        data: ``{"vertices": [...], "rotation": {id: [...]}, "outer_cycle": [...]}``.
        text: The raw document, used to locate fields for error messages.
        source: File name used in error messages.

    Returns:
        PlaneGraph: The validated graph.

    Raises:
        ParseError: The document does not have the graph shape.
        PlaneGraphError: The rotation system is invalid.

    """
    document = _require_object(data, source, "graph document")
    _check_fields(document, GRAPH_FIELDS, OPTIONAL_GRAPH_FIELDS, text, source)
    vertices = _string_list(document["vertices"], text, source, "vertices")
    rotation = document["rotation"]
    if not isinstance(rotation, dict):
        message = "expected an object mapping vertex ids to neighbour lists"
        raise ParseError(message, source, _line_of(text, "rotation"), "rotation")
    rotation_lists = {u: _string_list(neighbours, text, source, u) for u, neighbours in rotation.items()}
    outer_cycle = _string_list(document["outer_cycle"], text, source, "outer_cycle")
    return PlaneGraph.build_from_rotation(vertices, rotation_lists, outer_cycle)


def parse_graph(text: str, source: str = "<input>") -> PlaneGraph:
    """Decode and build a plane graph from graph JSON text."""
    return deserialize_graph(load_json(text, source), text, source)


def serialize_graph(g: PlaneGraph) -> dict[str, Any]:
    """
    Serialize a plane graph to its JSON document.

    Args:
        g: The graph to serialize.

    Returns:
        The graph document; the outer cycle is listed counterclockwise from its smallest vertex.

    """
    return {
        "vertices": list(g.vertex_ids),
        "rotation": {v: list(g.rotation[v]) for v in g.vertex_ids},
        "outer_cycle": list(g.outer_cycle),
    }


def serialize_triangulation(result: TriangulationResult) -> dict[str, Any]:
    """The triangulated graph document with the added edges in insertion order."""
    document = serialize_graph(result.graph)
    document["added_edges"] = [list(edge) for edge in result.added_edges]
    return document


def _point(value: Any, text: str, source: str, field: str) -> Point:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(c, int | float) and not isinstance(c, bool) for c in value)
        or not all(math.isfinite(c) for c in value)
    ):
        raise ParseError("expected a point [x, y] of two finite numbers", source, _line_of(text, field), field)
    return (float(value[0]), float(value[1]))


def parse_coords(text: str, source: str = "<input>") -> dict[str, Point]:
    """
    Decode a coordinates document ``{"coords": {id: [x, y]}}``.

    The output of the embed command is accepted as is.

    Raises:
        ParseError: The document does not have the coordinates shape.

    """
    document = _require_object(load_json(text, source), source, "coordinates document")
    _check_fields(document, COORDS_FIELDS, OPTIONAL_COORDS_FIELDS, text, source)
    coords = document["coords"]
    if not isinstance(coords, dict):
        raise ParseError("expected an object mapping vertex ids to points", source, _line_of(text, "coords"), "coords")
    return {v: _point(value, text, source, v) for v, value in coords.items()}


def serialize_coords(coords: Mapping[str, Point]) -> dict[str, list[float]]:
    """Coordinates as ``{id: [x, y]}``."""
    return {v: [float(x), float(y)] for v, (x, y) in coords.items()}


def parse_weights(text: str, source: str = "<input>") -> dict[str, dict[str, float]]:
    """
    Decode a weights document ``{u: {v: weight}}``.

    Only the shape is checked here; the convex combination invariants are checked against the graph by the
    solver.

    Raises:
        ParseError: The document does not have the weights shape.

    """
    document = _require_object(load_json(text, source), source, "weights document")
    rows: dict[str, dict[str, float]] = {}
    for u, row in document.items():
        if not isinstance(row, dict):
            raise ParseError("expected an object mapping neighbour ids to weights", source, _line_of(text, u), u)
        for v, weight in row.items():
            if not isinstance(weight, int | float) or isinstance(weight, bool) or not math.isfinite(weight):
                raise ParseError(f"weight for neighbour '{v}' is not a finite number", source, _line_of(text, u), u)
        rows[u] = {v: float(weight) for v, weight in row.items()}
    return rows

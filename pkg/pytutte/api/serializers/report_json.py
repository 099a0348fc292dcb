"""Serializers for structure reports, validation reports and embedding results."""

from typing import Any

from pytutte.api.serializers.graph_json import serialize_coords
from pytutte.domain.models.embedding import EmbeddingResult
from pytutte.domain.models.plane_graph import PlaneGraph, Subgraph
from pytutte.domain.models.structure import StructureReport
from pytutte.domain.models.validation import EdgePair, ValidationReport


def serialize_subgraph(s: Subgraph) -> dict[str, Any]:
    """Sorted vertex and edge lists of a subgraph."""
    return {"vertices": s.sorted_vertices(), "edges": [list(edge) for edge in s.sorted_edges()]}


def _pair(pair: tuple[int, int] | None) -> list[int] | None:
    return None if pair is None else list(pair)


def serialize_structure_report(g: PlaneGraph, report: StructureReport) -> dict[str, Any]:
    """
    Serialize a structure report with stable field names.

    Faces named anywhere in the report are listed under ``faces`` with their boundary vertex cycles.

    Args:
        g: The graph the report describes.
        report: The report.

    Returns:
        The report document.

    """
    mentioned: set[int] = set()
    for pair in (report.offending_face_pair, report.disconnected_bounded_pair):
        if pair is not None:
            mentioned.update(pair)
    inverted = []
    for finding in report.inverted_subgraphs:
        mentioned.add(finding.blocking_face)
        mentioned.update(finding.region_faces)
        inverted.append(
            {
                "external_edge": list(finding.external_edge),
                "blocking_face": finding.blocking_face,
                "region_faces": list(finding.region_faces),
                "region": serialize_subgraph(finding.region),
            }
        )
    witness = None
    if report.witness is not None:
        witness = {
            "u": report.witness.u,
            "v": report.witness.v,
            "h": serialize_subgraph(report.witness.h),
            "k": serialize_subgraph(report.witness.k),
        }
    return {
        "biconnected": report.biconnected,
        "triconnected": report.triconnected,
        "faces_simple": report.faces_simple,
        "nodally_3_connected": report.nodally_3_connected,
        "nodal_failure": None if report.nodal.failure is None else report.nodal.failure.value,
        "convex_embeddable": report.convex_embeddable,
        "offending_face_pair": _pair(report.offending_face_pair),
        "disconnected_bounded_pair": _pair(report.disconnected_bounded_pair),
        "inverted_subgraphs": inverted,
        "witness": witness,
        "faces": {str(fid): list(g.face(fid).vertices) for fid in sorted(mentioned)},
    }


def _edge_pair(pair: EdgePair) -> dict[str, Any]:
    return {"first": list(pair.first), "second": list(pair.second), "relation": pair.relation.value}


def serialize_validation_report(report: ValidationReport) -> dict[str, Any]:
    """
    Serialize a validation report.

    Args:
        report: The report.

    Returns:
        The report document; face ids are string keys.

    """
    return {
        "is_embedding": report.is_embedding,
        "degenerate_edges": [list(edge) for edge in report.degenerate_edges],
        "coincident_vertex_pairs": [list(pair) for pair in report.coincident_vertex_pairs],
        "crossing_or_overlapping_edge_pairs": [_edge_pair(pair) for pair in report.crossing_or_overlapping_edge_pairs],
        "vertex_on_edge": [[v, list(edge)] for v, edge in report.vertex_on_edge],
        "suspect_pairs": [_edge_pair(pair) for pair in report.suspect_pairs],
        "nonconvex_faces": list(report.nonconvex_faces),
        "face_classifications": {
            str(fid): {
                "kind": image.kind.value,
                "corners": list(image.corners),
                "reflex_corners": list(image.reflex_corners),
            }
            for fid, image in sorted(report.face_classifications.items())
        },
        "covering_number_violations": [
            {"point": list(violation.point), "count": violation.count} for violation in report.covering_number_violations
        ],
        "orientation_preserved": report.orientation_preserved,
        "scale": report.scale,
    }


def serialize_embedding(result: EmbeddingResult, report: ValidationReport) -> dict[str, Any]:
    """
    Serialize the output of the embed command.

    The document is also a valid coordinates document for the validate and render commands.

    Args:
        result: The solved map.
        report: Validation of the map against the graph it was solved on.

    Returns:
        Coordinates, solve metadata, weights, placement and validation.

    """
    return {
        "coords": serialize_coords(result.coords),
        "residual": result.residual,
        "delta": result.delta,
        "weights": result.scheme.rows(),
        "placement": list(result.placement.vertices),
        "validation": serialize_validation_report(report),
    }

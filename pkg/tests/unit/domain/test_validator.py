"""Tests for the geometric embedding validator."""

import pytest

from pytutte.config import Config
from pytutte.domain.errors import DegenerateFace, MissingCoordinate, ValidationError
from pytutte.domain.models.plane_graph import Face, PlaneGraph
from pytutte.domain.models.validation import FaceKind, SegmentRelation
from pytutte.domain.services.validator import EmbeddingValidator
from pytutte.utils import instances

UNIT_SQUARE = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (1.0, 1.0), "d": (0.0, 1.0)}
COLLAPSED = {"v1": (0.0, 0.0), "v2": (1.0, 0.0), "v3": (1.0, 1.0), "v4": (0.0, 1.0), "u2": (0.5, 0.5), "u4": (0.5, 0.5)}


def bounded_id(g: PlaneGraph, vertices: set[str]) -> int:
    """Id of the unique bounded face with the given vertex set."""
    matches = [f.id for f in g.bounded_faces if f.vertex_set == vertices]
    assert len(matches) == 1
    return matches[0]


def square_face() -> Face:
    """A bounded face ``a b c d``."""
    return Face(0, (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")))


def test_quadril_embedding(validator: EmbeddingValidator, quadril: PlaneGraph) -> None:
    """Test that the unit square with its diagonal is an embedding with convex faces."""
    report = validator.validate(quadril, UNIT_SQUARE, samples=200)

    assert report.is_embedding
    assert report.orientation_preserved
    assert report.all_faces_convex
    assert report.nonconvex_faces == ()
    assert report.covering_number_violations == ()
    assert report.scale == pytest.approx(2**0.5)
    assert set(report.face_classifications) == {f.id for f in quadril.bounded_faces}


def test_collapsed_map_is_not_an_embedding(validator: EmbeddingValidator, collapse: PlaneGraph) -> None:
    """Test the findings for the barycentric map of the collapse instance."""
    report = validator.validate(collapse, COLLAPSED)

    assert not report.is_embedding
    assert report.coincident_vertex_pairs == (("u2", "u4"),)
    assert not report.orientation_preserved
    relations = {(p.first, p.second): p.relation for p in report.crossing_or_overlapping_edge_pairs}
    assert relations[(("u2", "v1"), ("u4", "v1"))] is SegmentRelation.OVERLAP
    assert relations[(("u2", "v3"), ("u4", "v3"))] is SegmentRelation.OVERLAP
    # opposite spokes meet end to end at the collapsed point
    assert relations[(("u2", "v1"), ("u4", "v3"))] is SegmentRelation.TOUCHING


def test_collapsed_inner_face_is_a_segment(validator: EmbeddingValidator, collapse: PlaneGraph) -> None:
    """Test that the inner face image degenerates to the diagonal while the outer quadrilaterals stay convex."""
    report = validator.validate(collapse, COLLAPSED)

    inner = report.face_classifications[bounded_id(collapse, {"u2", "u4", "v1", "v3"})]
    assert inner.kind is FaceKind.SEGMENT
    assert set(inner.corners) == {"v1", "v3"}
    lower = report.face_classifications[bounded_id(collapse, {"u2", "v1", "v2", "v3"})]
    assert lower.kind is FaceKind.CONVEX_POLYGON
    assert set(lower.corners) == {"v1", "v2", "v3"}


def test_crossing_edges(validator: EmbeddingValidator, quadril: PlaneGraph) -> None:
    """Test that swapping two corners makes the sides cross."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0), "d": (1.0, 1.0)}

    report = validator.validate(quadril, coords)

    assert not report.is_embedding
    crossing = [p for p in report.crossing_or_overlapping_edge_pairs if p.relation is SegmentRelation.CROSSING]
    assert [(p.first, p.second) for p in crossing] == [(("a", "d"), ("b", "c"))]


def test_vertex_on_edge(validator: EmbeddingValidator, triangle_with_centre: PlaneGraph) -> None:
    """Test that a vertex placed inside an edge image is reported."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0), "z": (0.5, 0.0)}

    report = validator.validate(triangle_with_centre, coords)

    assert not report.is_embedding
    assert ("z", ("a", "b")) in report.vertex_on_edge


def test_near_contact_is_suspect() -> None:
    """Test that edges within tolerance of touching are listed as suspect."""
    validator = EmbeddingValidator(Config(tolerance=1e-3))
    g = instances.k4().graph()
    coords = {"a": (0.0, 0.0), "b": (2.0, 0.0), "c": (1.0, 2.0), "d": (1.0, 0.0005)}

    report = validator.validate(g, coords)

    assert [(p.first, p.second) for p in report.suspect_pairs] == [(("a", "b"), ("c", "d"))]
    assert ("d", ("a", "b")) in report.vertex_on_edge


def test_degenerate_edge(validator: EmbeddingValidator, quadril: PlaneGraph) -> None:
    """Test that an edge of zero length is degenerate."""
    coords = dict(UNIT_SQUARE, c=(0.0, 0.0))

    report = validator.validate(quadril, coords)

    assert ("a", "c") in report.degenerate_edges
    assert ("a", "c") in report.coincident_vertex_pairs
    assert not report.is_embedding


def test_missing_coordinate(validator: EmbeddingValidator, quadril: PlaneGraph) -> None:
    """Test that every vertex needs a point."""
    coords = {v: p for v, p in UNIT_SQUARE.items() if v != "d"}

    with pytest.raises(MissingCoordinate, match="'d'"):
        validator.validate(quadril, coords)


def test_classify_point(validator: EmbeddingValidator) -> None:
    """Test a face whose corners all coincide."""
    coords = dict.fromkeys("abcd", (0.25, 0.25))

    assert validator.classify_face_image(square_face(), coords).kind is FaceKind.POINT


def test_classify_convex_polygon(validator: EmbeddingValidator) -> None:
    """Test a square drawn counterclockwise."""
    image = validator.classify_face_image(square_face(), UNIT_SQUARE)

    assert image.kind is FaceKind.CONVEX_POLYGON
    assert image.corners == ("a", "b", "c", "d")
    assert image.reflex_corners == ()


def test_classify_straight_corner_away(validator: EmbeddingValidator) -> None:
    """Test that a corner in the middle of a straight side is distilled away."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (2.0, 0.0), "d": (1.0, 1.0)}

    image = validator.classify_face_image(square_face(), coords)

    assert image.kind is FaceKind.CONVEX_POLYGON
    assert image.corners == ("a", "c", "d")


def test_classify_reflex_corner(validator: EmbeddingValidator) -> None:
    """Test that an arrowhead is not convex and names its reflex corner."""
    coords = {"a": (0.0, 0.0), "b": (2.0, 0.0), "c": (1.0, 0.5), "d": (1.0, 2.0)}

    image = validator.classify_face_image(square_face(), coords)

    assert image.kind is FaceKind.OTHER
    assert image.reflex_corners == ("c",)


def test_orientation_check(validator: EmbeddingValidator, quadril: PlaneGraph) -> None:
    """Test that a mirror image reverses the orientation."""
    mirrored = {v: (-x, y) for v, (x, y) in UNIT_SQUARE.items()}

    assert validator.orientation_check(quadril, UNIT_SQUARE)
    assert not validator.orientation_check(quadril, mirrored)


def test_orientation_check_rejects_flat_face(validator: EmbeddingValidator, collapse: PlaneGraph) -> None:
    """Test that a face image without area cannot be oriented."""
    with pytest.raises(DegenerateFace):
        validator.orientation_check(collapse, COLLAPSED)


def test_orientation_check_needs_simple_faces(validator: EmbeddingValidator) -> None:
    """Test that a non-simple face boundary is rejected."""
    drawing = instances.bowtie()

    with pytest.raises(ValidationError):
        validator.orientation_check(drawing.graph(), drawing.coords)


def test_covering_finds_folded_faces(validator: EmbeddingValidator, collapse: PlaneGraph) -> None:
    """Test that swapping the internal vertices across the diagonal covers points more than once."""
    coords = dict(COLLAPSED, u2=(0.25, 0.75), u4=(0.75, 0.25))

    violations = validator.covering_number_check(collapse, coords, samples=200, seed=5)

    assert violations
    assert all(v.count != 1 for v in violations)


def test_covering_is_reproducible(validator: EmbeddingValidator, collapse: PlaneGraph) -> None:
    """Test that the sample points are fixed by the seed."""
    coords = dict(COLLAPSED, u2=(0.25, 0.75), u4=(0.75, 0.25))

    first = validator.covering_number_check(collapse, coords, samples=100, seed=11)
    second = validator.covering_number_check(collapse, coords, samples=100, seed=11)

    assert first == second


def test_covering_needs_boundary_area(validator: EmbeddingValidator, quadril: PlaneGraph) -> None:
    """Test that a self-intersecting boundary without area is rejected."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0), "d": (1.0, 1.0)}

    with pytest.raises(ValidationError):
        validator.covering_number_check(quadril, coords, samples=10)


def test_embedded_drawings_validate(validator: EmbeddingValidator) -> None:
    """Test that the catalogue drawings are embeddings of their graphs."""
    for name in ("triangle_with_centre", "square_with_centre", "split_hexagon", "octahedron", "theta"):
        drawing = instances.NAMED_INSTANCES[name]()
        report = validator.validate(drawing.graph(), drawing.coords, samples=100)
        assert report.is_embedding, name
        assert report.orientation_preserved, name
        assert report.covering_number_violations == (), name

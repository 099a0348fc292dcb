"""Findings of the geometric validation of a map."""

from dataclasses import dataclass, field
from enum import Enum

from pytutte.domain.models.plane_graph import Edge

Point = tuple[float, float]


class FaceKind(Enum):
    """Shape of the image of a bounded face."""

    POINT = "Point"
    SEGMENT = "Segment"
    CONVEX_POLYGON = "ConvexPolygon"
    OTHER = "Other"


class SegmentRelation(Enum):
    """How the images of two edges meet."""

    DISJOINT = "disjoint"
    CROSSING = "crossing"
    OVERLAP = "overlap"
    TOUCHING = "touching"
    SUSPECT = "suspect"


@dataclass(frozen=True)
class FaceImage:
    """Classification of one face image with its distilled corners."""

    face_id: int
    kind: FaceKind
    corners: tuple[str, ...] = ()
    reflex_corners: tuple[str, ...] = ()


@dataclass(frozen=True)
class EdgePair:
    """Two edges whose images meet somewhere other than a shared endpoint."""

    first: Edge
    second: Edge
    relation: SegmentRelation


@dataclass(frozen=True)
class CoveringViolation:
    """A sample point covered by a number of bounded face images other than one."""

    point: Point
    count: int


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking whether a map is a straight-edge embedding."""

    is_embedding: bool
    degenerate_edges: tuple[Edge, ...] = ()
    coincident_vertex_pairs: tuple[tuple[str, str], ...] = ()
    crossing_or_overlapping_edge_pairs: tuple[EdgePair, ...] = ()
    vertex_on_edge: tuple[tuple[str, Edge], ...] = ()
    suspect_pairs: tuple[EdgePair, ...] = ()
    nonconvex_faces: tuple[int, ...] = ()
    face_classifications: dict[int, FaceImage] = field(default_factory=dict)
    covering_number_violations: tuple[CoveringViolation, ...] = ()
    orientation_preserved: bool = False
    scale: float = 1.0

    @property
    def reflex_corners(self) -> dict[int, tuple[str, ...]]:
        """Reflex corners per face, only for faces that have any."""
        return {fid: image.reflex_corners for fid, image in self.face_classifications.items() if image.reflex_corners}

    @property
    def all_faces_convex(self) -> bool:
        """Whether every classified face image is a convex polygon."""
        return all(image.kind is FaceKind.CONVEX_POLYGON for image in self.face_classifications.values())

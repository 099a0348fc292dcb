"""Structural findings about plane graphs."""

from dataclasses import dataclass, field
from enum import Enum

from pytutte.domain.models.plane_graph import Edge, Subgraph


class NodalFailure(Enum):
    """Why a graph failed the nodal 3-connectivity criterion."""

    NOT_BICONNECTED = "not_biconnected"
    DISCONNECTED_FACE_PAIR = "disconnected_face_pair"


@dataclass(frozen=True)
class Witness:
    """
    A split ``G = H u K`` with ``H n K = ({u, v}, {})`` where neither side is a simple path nor all of ``G``.

    Certifies that a graph is not nodally 3-connected.
    """

    h: Subgraph
    k: Subgraph
    u: str
    v: str


@dataclass(frozen=True)
class InvertedSubgraph:
    """A bounded face that meets both ends of an external edge without being incident to it."""

    external_edge: Edge
    blocking_face: int
    region: Subgraph
    region_faces: tuple[int, ...] = ()


@dataclass(frozen=True)
class NodalConnectivity:
    """Outcome of the nodal 3-connectivity criterion."""

    holds: bool
    failure: NodalFailure | None = None
    offending_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        """Truth value is the criterion itself."""
        return self.holds


@dataclass(frozen=True)
class StructureReport:
    """Combined structural analysis of a plane graph."""

    biconnected: bool
    triconnected: bool
    faces_simple: bool
    nodal: NodalConnectivity
    convex_embeddable: bool
    disconnected_bounded_pair: tuple[int, int] | None = None
    inverted_subgraphs: tuple[InvertedSubgraph, ...] = field(default_factory=tuple)
    witness: Witness | None = None

    @property
    def nodally_3_connected(self) -> bool:
        """Whether the nodal 3-connectivity criterion holds."""
        return self.nodal.holds

    @property
    def offending_face_pair(self) -> tuple[int, int] | None:
        """First face pair with a disconnected boundary intersection, if any."""
        return self.nodal.offending_pair

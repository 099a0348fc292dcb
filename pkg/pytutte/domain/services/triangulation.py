"""Combinatorial triangulation of the bounded faces of a plane graph."""

from pytutte.config import Config
from pytutte.domain.errors import NotBiconnected, TriangulationError
from pytutte.domain.models.embedding import NeighbourDelta, TriangulationResult
from pytutte.domain.models.plane_graph import Edge, PlaneGraph, canonical_cycle, edge_key, is_biconnected
from pytutte.utils.class_logger import LoggerMixin


class Triangulator(LoggerMixin):
    """Adds chords inside bounded faces until every bounded face is a triangle."""

    def __init__(self, config: Config | None = None) -> None:
        """Initialise the triangulator."""
        self.config = config or Config()

    def triangulate(self, g: PlaneGraph) -> TriangulationResult:
        """
        Triangulate every bounded face without adding vertices.

        Each face of length four or more is fanned from the first boundary vertex, in sorted order, whose fan
        chords are all new edges. If no such apex exists a single new diagonal splits the face and both halves
        are handled again. The outer face is left alone.

        Args:
            g: A biconnected plane graph with at least three vertices.

        Returns:
            TriangulationResult: The supergraph, the added edges in insertion order, and the faces of the
            supergraph covering each original bounded face.

        Raises:
            NotBiconnected: The graph is not biconnected or too small to have a bounded face.

        """
        if len(g.vertex_ids) < 3 or not is_biconnected(g):
            raise NotBiconnected("triangulation needs a biconnected graph with at least three vertices")
        rotation = {v: list(neighbours) for v, neighbours in g.rotation.items()}
        edges = set(g.edges)
        added: list[Edge] = []
        pieces: dict[int, list[tuple[str, ...]]] = {}

        for face in g.bounded_faces:
            pending = [face.vertices]
            triangles: list[tuple[str, ...]] = []
            while pending:
                cycle = pending.pop()
                if len(cycle) == 3:
                    triangles.append(cycle)
                    continue
                apex = _fan_apex(cycle, edges)
                if apex is not None:
                    i = cycle.index(apex)
                    rotated = cycle[i:] + cycle[:i]
                    first, rest = self._split(rotation, edges, added, rotated, apex, rotated[2])
                    triangles.append(first)
                    pending.append(rest)
                    continue
                x, y = _first_free_diagonal(cycle, edges, face.id)
                pending.extend(self._split(rotation, edges, added, cycle, x, y))
            pieces[face.id] = triangles

        triangulated = PlaneGraph.build_from_rotation(g.vertex_ids, rotation, g.outer_cycle)
        by_cycle = {canonical_cycle(f.vertices): f.id for f in triangulated.bounded_faces}
        face_map = {fid: tuple(sorted(by_cycle[canonical_cycle(t)] for t in tris)) for fid, tris in pieces.items()}
        self.logger.info(f"Triangulated {len(g.bounded_faces)} bounded faces with {len(added)} added edges")
        return TriangulationResult(graph=triangulated, added_edges=tuple(added), face_map=face_map)

    def _split(
        self,
        rotation: dict[str, list[str]],
        edges: set[Edge],
        added: list[Edge],
        cycle: tuple[str, ...],
        x: str,
        y: str,
    ) -> tuple[tuple[str, ...], tuple[str, ...]]:
        # the face sector at x starts right after its successor on the counterclockwise cycle
        n = len(cycle)
        ix, iy = cycle.index(x), cycle.index(y)
        rotation[x].insert(rotation[x].index(cycle[(ix + 1) % n]) + 1, y)
        rotation[y].insert(rotation[y].index(cycle[(iy + 1) % n]) + 1, x)
        edges.add(edge_key(x, y))
        added.append(edge_key(x, y))
        self.logger.debug(f"Added chord {x}-{y}")
        if ix < iy:
            return cycle[ix : iy + 1], cycle[iy:] + cycle[: ix + 1]
        return cycle[ix:] + cycle[: iy + 1], cycle[iy : ix + 1]

    def neighbour_deltas(self, g: PlaneGraph, g_tri: PlaneGraph) -> dict[str, NeighbourDelta]:
        """Neighbour sets of every internal vertex of ``g`` before and after triangulation."""
        return neighbour_deltas(g, g_tri)


def neighbour_deltas(g: PlaneGraph, g_tri: PlaneGraph) -> dict[str, NeighbourDelta]:
    """
    Compare the neighbourhoods of the internal vertices of ``g`` with those in its triangulation.

    Args:
        g: The original graph.
        g_tri: A supergraph of ``g`` on the same vertices.

    Returns:
        dict[str, NeighbourDelta]: Original and triangulated neighbour sets per internal vertex.

    """
    return {
        u: NeighbourDelta(original=frozenset(g.neighbours(u)), triangulated=frozenset(g_tri.neighbours(u)))
        for u in g.internal_vertices
    }


def _fan_apex(cycle: tuple[str, ...], edges: set[Edge]) -> str | None:
    for apex in sorted(cycle):
        i = cycle.index(apex)
        rotated = cycle[i:] + cycle[:i]
        if all(edge_key(apex, target) not in edges for target in rotated[2:-1]):
            return apex
    return None


def _first_free_diagonal(cycle: tuple[str, ...], edges: set[Edge], face_id: int) -> tuple[str, str]:
    """
    First non-edge diagonal of the face cycle in index order, the fallback split when no fan apex exists.

    A face of a plane graph always has a vertex whose fan chords are all new (an outerplanar argument), so
    triangulating a valid graph never reaches this.

    Raises:
        TriangulationError: Every diagonal of the cycle is already an edge.

    """
    n = len(cycle)
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if edge_key(cycle[i], cycle[j]) not in edges:
                return cycle[i], cycle[j]
    raise TriangulationError(f"no diagonal can split face {face_id} boundary {list(cycle)}")

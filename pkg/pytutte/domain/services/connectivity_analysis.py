"""Nodal 3-connectivity, convex embeddability, inverted subgraphs and chord diagnostics."""

from collections import deque
from itertools import combinations

import networkx as nx

from pytutte.config import Config
from pytutte.domain.errors import FacesNotSimple, InstanceTooLarge, NotTriangulated
from pytutte.domain.models.plane_graph import (
    Edge,
    Face,
    PlaneGraph,
    Subgraph,
    edge_key,
    face_boundary_is_simple_cycle,
    face_intersection,
    is_biconnected,
    is_triangulated,
    is_triconnected,
    subgraph_is_connected,
    subgraph_is_simple_path,
)
from pytutte.domain.models.structure import InvertedSubgraph, NodalConnectivity, NodalFailure, StructureReport, Witness
from pytutte.utils.class_logger import LoggerMixin


class ConnectivityAnalyzer(LoggerMixin):
    """Structural analysis of plane graphs by combinatorial criteria."""

    def __init__(self, config: Config | None = None) -> None:
        """
        Initialise the analyzer.

        Args:
            config (Config, optional): Supplies the vertex cap of the exhaustive witness search.

        """
        self.config = config or Config()

    def is_nodally_3connected(self, g: PlaneGraph) -> NodalConnectivity:
        """
        Decide nodal 3-connectivity by the face-intersection criterion.

        The graph must be biconnected and every two faces, the outer face included, must meet in a connected
        set. An empty intersection counts as connected.

        Args:
            g: The plane graph.

        Returns:
            NodalConnectivity: The verdict, with the first offending face pair in report order on failure.

        """
        if not is_biconnected(g):
            self.logger.debug("Criterion fails: graph is not biconnected")
            return NodalConnectivity(False, NodalFailure.NOT_BICONNECTED)
        pair = _first_disconnected_pair(g.faces_in_report_order())
        if pair is not None:
            self.logger.debug(f"Criterion fails: faces {pair} meet in a disconnected set")
            return NodalConnectivity(False, NodalFailure.DISCONNECTED_FACE_PAIR, pair)
        return NodalConnectivity(True)

    def find_witnesses_bruteforce(self, g: PlaneGraph) -> Witness | None:
        """
        Search every 2-vertex split exhaustively for a witness against nodal 3-connectivity.

        For each vertex pair ``{u, v}`` the components of ``G - {u, v}`` are distributed over the two sides in all
        ways; the edge ``uv``, when present, is tried on either side.

        Args:
            g: A biconnected plane graph.

        Returns:
            Witness | None: The first witness found, or None when the graph is nodally 3-connected.

        Raises:
            InstanceTooLarge: The graph has more vertices than ``oracle_vertex_cap``.

        """
        cap = self.config.oracle_vertex_cap
        if len(g.vertex_ids) > cap:
            raise InstanceTooLarge(f"exhaustive witness search is capped at {cap} vertices, graph has {len(g.vertex_ids)}")
        graph = g.nx_graph
        whole = Subgraph(frozenset(g.vertex_ids), g.edges)
        for u, v in combinations(g.vertex_ids, 2):
            rest = graph.subgraph([w for w in g.vertex_ids if w not in (u, v)])
            components = sorted((frozenset(c) for c in nx.connected_components(rest)), key=min)
            uv = edge_key(u, v)
            has_uv = uv in g.edges
            k = len(components)
            # masks containing component 0 cover each split once; the uv edge is tried on both sides
            for mask in range(1, 2**k - 1, 2):
                side = frozenset({u, v}).union(*(components[i] for i in range(k) if mask >> i & 1))
                other = frozenset({u, v}).union(*(components[i] for i in range(k) if not mask >> i & 1))
                h_edges = frozenset(e for e in g.edges if e != uv and e[0] in side and e[1] in side)
                k_edges = frozenset(e for e in g.edges if e != uv and e[0] in other and e[1] in other)
                options = [(h_edges, k_edges | {uv}), (h_edges | {uv}, k_edges)] if has_uv else [(h_edges, k_edges)]
                for h_set, k_set in options:
                    h = Subgraph(side, h_set)
                    k_side = Subgraph(other, k_set)
                    if _is_witness_side(h, whole) and _is_witness_side(k_side, whole):
                        self.logger.debug(f"Witness found at split vertices {u}, {v}")
                        return Witness(h, k_side, u, v)
        return None

    def find_inverted_subgraphs(self, g: PlaneGraph) -> list[InvertedSubgraph]:
        """
        List every external edge whose two ends lie on a bounded face not incident to it.

        The region of each finding is the union of the faces enclosed between the blocking face and the external
        edge, found by a flood fill over the dual graph from the face on the inner side of the edge that never
        crosses the blocking face's boundary or the edge itself.

        Args:
            g: A plane graph whose faces are all simple cycles.

        Returns:
            list[InvertedSubgraph]: Findings ordered by external edge, then by blocking face.

        Raises:
            FacesNotSimple: Some face boundary is not a simple cycle.

        """
        _require_simple_faces(g)
        findings = []
        bounded = [f for f in g.faces_in_report_order() if not f.is_outer]
        for edge in sorted(g.outer_edges):
            a, b = edge
            for face in bounded:
                if a in face.vertex_set and b in face.vertex_set and edge not in face.edge_set:
                    region_faces = self._region_between(g, edge, face)
                    region = Subgraph()
                    for fid in region_faces:
                        region = region | g.face(fid).as_subgraph()
                    self.logger.info(f"Inverted subgraph: external edge {edge} blocked by face {face.id}")
                    findings.append(InvertedSubgraph(edge, face.id, region, region_faces))
        return findings

    def _region_between(self, g: PlaneGraph, edge: Edge, blocking: Face) -> tuple[int, ...]:
        a, b = edge
        inner = g.dart_face[(a, b)] if g.dart_face[(a, b)] != g.outer_face else g.dart_face[(b, a)]
        blocked = blocking.edge_set | {edge}
        seen = {inner}
        queue = deque([inner])
        while queue:
            fid = queue.popleft()
            for x, y in g.face(fid).boundary:
                if edge_key(x, y) in blocked:
                    continue
                neighbour = g.dart_face[(y, x)]
                if neighbour not in seen:
                    seen.add(neighbour)
                    queue.append(neighbour)
        return tuple(sorted(seen))

    def is_convex_embeddable(self, g: PlaneGraph, with_witness: bool = False) -> StructureReport:
        """
        Decide convex embeddability and assemble the full structure report.

        A graph is convex embeddable when it is biconnected, every face boundary is a simple cycle, every two
        bounded faces meet in a connected set and there are no inverted subgraphs. Unlike the nodal criterion the
        outer face is not paired here. A single vertex or edge has no face cycle and is never convex embeddable.

        Args:
            g: The plane graph.
            with_witness: Also run the exhaustive witness search when the graph is biconnected and small enough.

        Returns:
            StructureReport: All structural findings.

        """
        biconnected = is_biconnected(g)
        faces_simple = all(face_boundary_is_simple_cycle(f) for f in g.faces)
        nodal = self.is_nodally_3connected(g)
        bounded_pair = None
        inverted: list[InvertedSubgraph] = []
        if faces_simple:
            bounded_pair = _first_disconnected_pair([f for f in g.faces_in_report_order() if not f.is_outer])
            inverted = self.find_inverted_subgraphs(g)
        convex = biconnected and faces_simple and bounded_pair is None and not inverted
        witness = None
        if with_witness and biconnected and len(g.vertex_ids) <= self.config.oracle_vertex_cap:
            witness = self.find_witnesses_bruteforce(g)
        self.logger.info(
            f"Structure of {len(g.vertex_ids)}-vertex graph: biconnected={biconnected}, "
            f"nodally_3_connected={nodal.holds}, convex_embeddable={convex}"
        )
        return StructureReport(
            biconnected=biconnected,
            triconnected=is_triconnected(g),
            faces_simple=faces_simple,
            nodal=nodal,
            convex_embeddable=convex,
            disconnected_bounded_pair=bounded_pair,
            inverted_subgraphs=tuple(inverted),
            witness=witness,
        )

    def chord_diagnostic(self, g: PlaneGraph) -> list[Edge]:
        """
        Flag chords that break nodal 3-connectivity of a triangulated graph.

        A chord joins two outer-boundary vertices without being an outer edge; it is flagged when it bounds a
        triangle whose other two edges are not both outer edges.

        Args:
            g: A plane graph whose bounded faces are all triangles.

        Returns:
            list[Edge]: Flagged chords, sorted.

        Raises:
            NotTriangulated: Some bounded face has more than three edges.

        """
        if not is_triangulated(g):
            raise NotTriangulated("chord diagnostic needs every bounded face to be a triangle")
        external = g.external_vertices
        outer_edges = g.outer_edges
        flagged: set[Edge] = set()
        for face in g.bounded_faces:
            for edge in face.edge_set:
                if edge in outer_edges or edge[0] not in external or edge[1] not in external:
                    continue
                others = face.edge_set - {edge}
                if not others <= outer_edges:
                    flagged.add(edge)
        return sorted(flagged)


def _is_witness_side(side: Subgraph, whole: Subgraph) -> bool:
    return not subgraph_is_simple_path(side) and side != whole


def _first_disconnected_pair(faces: list[Face]) -> tuple[int, int] | None:
    for f1, f2 in combinations(faces, 2):
        if not subgraph_is_connected(face_intersection(f1, f2)):
            return (f1.id, f2.id)
    return None


def _require_simple_faces(g: PlaneGraph) -> None:
    for face in g.faces:
        if not face_boundary_is_simple_cycle(face):
            raise FacesNotSimple(f"face {face.id} with boundary {list(face.vertices)} is not a simple cycle")

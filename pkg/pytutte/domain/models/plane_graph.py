"""Combinatorial plane graphs: rotation systems, face tracing and classical connectivity.

A plane graph is stored as a rotation system: for every vertex the cyclic counterclockwise order of its
neighbours. Faces are traced from darts (ordered vertex pairs) with the predecessor rule: from dart ``(u, v)``
the next dart is ``(v, w)`` where ``w`` immediately precedes ``u`` in ``rotation(v)``. With counterclockwise
rotations this traces bounded faces counterclockwise and the outer face clockwise.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations

import networkx as nx

from pytutte.domain.errors import (
    AsymmetricRotation,
    DuplicateEdge,
    EmptyGraph,
    NonPlanarRotation,
    OuterFaceNotFound,
    PlaneGraphError,
    SelfLoop,
    UnknownVertex,
)

logger = logging.getLogger("pytutte.plane_graph")

Vertex = str
Edge = tuple[str, str]
Dart = tuple[str, str]


def edge_key(u: Vertex, v: Vertex) -> Edge:
    """Return the unordered edge ``{u, v}`` in its normalised (sorted) form."""
    return (u, v) if u <= v else (v, u)


def canonical_cycle(sequence: Sequence[Vertex]) -> tuple[Vertex, ...]:
    """
    Rotate a cyclic sequence to its lexicographically smallest rotation.

    Args:
        sequence: The cyclic vertex sequence.

    Returns:
        tuple[str, ...]: The same cycle, starting at its smallest rotation.

    """
    items = tuple(sequence)
    if not items:
        return items
    return min(items[i:] + items[:i] for i in range(len(items)))


def same_cycle(first: Sequence[Vertex], second: Sequence[Vertex]) -> bool:
    """Whether two sequences describe the same directed cyclic sequence."""
    return len(first) == len(second) and canonical_cycle(first) == canonical_cycle(second)


@dataclass(frozen=True)
class Subgraph:
    """
    A vertex set and an edge set, combined as sets independently.

    Edge endpoints are not required to be in ``vertex_set``; connectivity treats every edge as joining its
    endpoints.
    """

    vertex_set: frozenset[Vertex] = frozenset()
    edge_set: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        """Normalise edges and reject loops."""
        normalised = frozenset(edge_key(u, v) for u, v in self.edge_set)
        for u, v in normalised:
            if u == v:
                raise SelfLoop(u)
        object.__setattr__(self, "edge_set", normalised)

    def __or__(self, other: "Subgraph") -> "Subgraph":
        """Union of vertex sets and of edge sets."""
        return Subgraph(self.vertex_set | other.vertex_set, self.edge_set | other.edge_set)

    def __and__(self, other: "Subgraph") -> "Subgraph":
        """Intersection of vertex sets and of edge sets."""
        return Subgraph(self.vertex_set & other.vertex_set, self.edge_set & other.edge_set)

    @property
    def is_empty(self) -> bool:
        """Whether the subgraph has neither vertices nor edges."""
        return not self.vertex_set and not self.edge_set

    def to_networkx(self) -> nx.Graph:
        """Build a networkx graph of the subgraph, endpoints of edges included."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertex_set)
        graph.add_edges_from(self.edge_set)
        return graph

    def sorted_vertices(self) -> list[Vertex]:
        """Vertices in sorted order."""
        return sorted(self.vertex_set)

    def sorted_edges(self) -> list[Edge]:
        """Edges in sorted order."""
        return sorted(self.edge_set)


def subgraph_is_connected(s: Subgraph) -> bool:
    """
    Whether a subgraph is connected over its own vertices and edges.

    The empty subgraph is connected vacuously.
    """
    if s.is_empty:
        return True
    return nx.is_connected(s.to_networkx())


def subgraph_is_simple_path(s: Subgraph) -> bool:
    """
    Whether a subgraph is a simple path.

    A path is either a single vertex or a connected graph in which two vertices have degree one and all others
    degree two. The empty subgraph is not a path.
    """
    if s.is_empty:
        return False
    graph = s.to_networkx()
    if graph.number_of_edges() != graph.number_of_nodes() - 1:
        return False
    if any(degree > 2 for _, degree in graph.degree()):
        return False
    return nx.is_connected(graph)


@dataclass(frozen=True)
class Face:
    """A traced face: a cyclic sequence of darts whose heads chain into tails."""

    id: int
    boundary: tuple[Dart, ...]
    is_outer: bool = False

    def __len__(self) -> int:
        """Boundary length in darts."""
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        """Boundary vertices in traversal order (dart tails); repeated for non-simple boundaries."""
        return tuple(u for u, _ in self.boundary)

    @property
    def vertex_set(self) -> frozenset[Vertex]:
        """Set of boundary vertices."""
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> frozenset[Edge]:
        """Set of boundary edges."""
        return frozenset(edge_key(u, v) for u, v in self.boundary)

    def as_subgraph(self) -> Subgraph:
        """The boundary as a subgraph."""
        return Subgraph(self.vertex_set, self.edge_set)

    def sort_key(self) -> tuple[Vertex, ...]:
        """Deterministic ordering key: the sorted boundary vertex list."""
        return tuple(sorted(self.vertex_set))


@dataclass(frozen=True)
class EulerReport:
    """Counts used by Euler's formula ``v - e + f = c + 1``."""

    vertices: int
    edges: int
    faces: int
    components: int

    @property
    def holds(self) -> bool:
        """Whether Euler's formula holds."""
        return self.vertices - self.edges + self.faces == self.components + 1

    def __bool__(self) -> bool:
        """Truth value is the formula itself."""
        return self.holds


@dataclass(frozen=True)
class PlaneGraph:
    """
    A finite simple graph with a combinatorial plane embedding and a designated outer face.

    Instances are immutable after :meth:`build_from_rotation`; derived data is cached lazily.
    """

    vertex_ids: tuple[Vertex, ...]
    rotation: Mapping[Vertex, tuple[Vertex, ...]]
    faces: tuple[Face, ...] = field(compare=False)
    outer_face: int = field(compare=False)

    @classmethod
    def build_from_rotation(
        cls,
        vertices: Iterable[Vertex],
        rotation_lists: Mapping[Vertex, Sequence[Vertex]],
        outer_spec: int | Sequence[Vertex],
    ) -> "PlaneGraph":
        """
        Validate a rotation system and trace its faces.

        Args:
            vertices: Vertex ids. Vertices missing from ``rotation_lists`` are isolated.
            rotation_lists: Counterclockwise neighbour order per vertex.
            outer_spec: Either a traced face id or the outer boundary listed counterclockwise.

        Returns:
            PlaneGraph: The validated graph with all faces traced.

        Raises:
            EmptyGraph: No vertices.
            UnknownVertex: A rotation list refers to an undeclared vertex.
            SelfLoop: A vertex lists itself.
            DuplicateEdge: A neighbour is repeated in one rotation list.
            AsymmetricRotation: ``v`` in ``rotation(u)`` without ``u`` in ``rotation(v)``.
            NonPlanarRotation: The traced faces violate Euler's formula.
            OuterFaceNotFound: ``outer_spec`` matches no traced face.

        """
        declared = list(vertices)
        if not declared:
            raise EmptyGraph("a plane graph needs at least one vertex")
        vertex_ids = tuple(sorted(set(declared)))
        if len(vertex_ids) != len(declared):
            raise PlaneGraphError("vertex ids must be unique")
        known = set(vertex_ids)
        for key in rotation_lists:
            if key not in known:
                raise UnknownVertex(key, "the rotation table")

        rotation: dict[Vertex, tuple[Vertex, ...]] = {v: tuple(rotation_lists.get(v, ())) for v in vertex_ids}
        for u, neighbours in rotation.items():
            seen: set[Vertex] = set()
            for v in neighbours:
                if v == u:
                    raise SelfLoop(u)
                if v not in known:
                    raise UnknownVertex(v, f"rotation('{u}')")
                if v in seen:
                    raise DuplicateEdge(u, v)
                seen.add(v)
        for u, neighbours in rotation.items():
            for v in neighbours:
                if u not in rotation[v]:
                    raise AsymmetricRotation(v, u)

        cycles = _trace_dart_cycles(vertex_ids, rotation)
        _check_planar(vertex_ids, rotation, cycles)
        faces = [Face(i, cycle) for i, cycle in enumerate(cycles)] or [Face(0, ())]
        outer_id = _resolve_outer(faces, outer_spec)
        faces[outer_id] = replace(faces[outer_id], is_outer=True)
        logger.debug(f"Built plane graph with {len(vertex_ids)} vertices and {len(faces)} traced faces")
        return cls(vertex_ids=vertex_ids, rotation=rotation, faces=tuple(faces), outer_face=outer_id)

    @cached_property
    def edges(self) -> frozenset[Edge]:
        """The derived set of unordered edges."""
        return frozenset(edge_key(u, v) for u, neighbours in self.rotation.items() for v in neighbours)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        """Edges in sorted order."""
        return tuple(sorted(self.edges))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """The underlying abstract graph as networkx graph (read-only use)."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertex_ids)
        graph.add_edges_from(self.sorted_edges)
        return graph

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        """Face id on the left of every dart."""
        return {dart: face.id for face in self.faces for dart in face.boundary}

    @property
    def outer(self) -> Face:
        """The outer (unbounded) face."""
        return self.faces[self.outer_face]

    @property
    def bounded_faces(self) -> tuple[Face, ...]:
        """All faces except the outer face."""
        return tuple(face for face in self.faces if not face.is_outer)

    @cached_property
    def outer_cycle(self) -> tuple[Vertex, ...]:
        """Outer boundary vertices in counterclockwise order, canonically rotated."""
        return canonical_cycle(tuple(reversed(self.outer.vertices)))

    @property
    def external_vertices(self) -> frozenset[Vertex]:
        """Vertices on the outer face boundary."""
        return self.outer.vertex_set

    @property
    def outer_edges(self) -> frozenset[Edge]:
        """Edges on the outer face boundary."""
        return self.outer.edge_set

    @cached_property
    def internal_vertices(self) -> tuple[Vertex, ...]:
        """Vertices not on the outer boundary, sorted."""
        external = self.external_vertices
        return tuple(v for v in self.vertex_ids if v not in external)

    def degree(self, v: Vertex) -> int:
        """Number of neighbours of ``v``."""
        return len(self.rotation[v])

    def neighbours(self, v: Vertex) -> tuple[Vertex, ...]:
        """Neighbours of ``v`` in counterclockwise order."""
        return self.rotation[v]

    def face(self, face_id: int) -> Face:
        """Face by id."""
        return self.faces[face_id]

    def faces_in_report_order(self) -> list[Face]:
        """Faces ordered lexicographically by their sorted vertex lists."""
        return sorted(self.faces, key=lambda f: (f.sort_key(), f.id))


def _trace_dart_cycles(
    vertex_ids: Sequence[Vertex], rotation: Mapping[Vertex, tuple[Vertex, ...]]
) -> list[tuple[Dart, ...]]:
    position = {v: {w: i for i, w in enumerate(neighbours)} for v, neighbours in rotation.items()}
    visited: set[Dart] = set()
    cycles: list[tuple[Dart, ...]] = []
    for u in vertex_ids:
        for v in rotation[u]:
            if (u, v) in visited:
                continue
            cycle: list[Dart] = []
            dart = (u, v)
            while dart not in visited:
                visited.add(dart)
                cycle.append(dart)
                tail, head = dart
                around = rotation[head]
                predecessor = around[(position[head][tail] - 1) % len(around)]
                dart = (head, predecessor)
            cycles.append(tuple(cycle))
    return cycles


def _check_planar(
    vertex_ids: Sequence[Vertex], rotation: Mapping[Vertex, tuple[Vertex, ...]], cycles: list[tuple[Dart, ...]]
) -> None:
    graph = nx.Graph()
    graph.add_nodes_from(vertex_ids)
    graph.add_edges_from((u, v) for u, neighbours in rotation.items() for v in neighbours)
    component_of = {}
    for index, component in enumerate(nx.connected_components(graph)):
        for v in component:
            component_of[v] = index
    traced: dict[int, int] = {}
    for cycle in cycles:
        index = component_of[cycle[0][0]]
        traced[index] = traced.get(index, 0) + 1
    for index, component in enumerate(nx.connected_components(graph)):
        if len(component) == 1:
            continue
        sub = graph.subgraph(component)
        expected = sub.number_of_edges() - sub.number_of_nodes() + 2
        if traced.get(index, 0) != expected:
            raise NonPlanarRotation(min(component), expected, traced.get(index, 0))


def _resolve_outer(faces: list[Face], outer_spec: int | Sequence[Vertex]) -> int:
    if isinstance(outer_spec, int):
        if 0 <= outer_spec < len(faces):
            return outer_spec
        raise OuterFaceNotFound(f"face id {outer_spec} out of range (traced {len(faces)} faces)")
    wanted = tuple(outer_spec)
    if len(faces) == 1 and not faces[0].boundary and len(wanted) <= 1:
        return 0
    reversed_wanted = tuple(reversed(wanted))
    matches = [face.id for face in faces if same_cycle(face.vertices, reversed_wanted)]
    if len(matches) != 1:
        raise OuterFaceNotFound(f"no traced face has outer boundary {list(wanted)} (listed counterclockwise)")
    return matches[0]


def trace_faces(g: PlaneGraph) -> list[Face]:
    """
    Trace the faces of a plane graph from its rotation system.

    Every dart belongs to exactly one face. Tracing is deterministic, so face ids agree with ``g.faces``.

    Args:
        g: A validated plane graph.

    Returns:
        list[Face]: Faces in trace order, the outer face flagged.

    """
    cycles = _trace_dart_cycles(g.vertex_ids, g.rotation)
    faces = [Face(i, cycle, is_outer=(i == g.outer_face)) for i, cycle in enumerate(cycles)]
    return faces or [Face(0, (), is_outer=True)]


def euler_check(g: PlaneGraph) -> EulerReport:
    """
    Evaluate Euler's formula ``v - e + f = c + 1``.

    Each component beyond the first sits inside a face of another one, so its outer cycle does not bound a new
    face: the geometric face count is one plus, per component with edges, its traced cycles minus one.

    Args:
        g: A validated plane graph.

    Returns:
        EulerReport: The counts; truthy iff the formula holds.

    """
    graph = g.nx_graph
    traced_per_component: dict[frozenset[Vertex], int] = {}
    components = [frozenset(c) for c in nx.connected_components(graph)]
    component_of = {v: component for component in components for v in component}
    for face in g.faces:
        if face.boundary:
            component = component_of[face.boundary[0][0]]
            traced_per_component[component] = traced_per_component.get(component, 0) + 1
    faces = 1 + sum(count - 1 for count in traced_per_component.values())
    return EulerReport(vertices=len(g.vertex_ids), edges=len(g.edges), faces=faces, components=len(components))


def is_connected(g: PlaneGraph) -> bool:
    """Whether the graph is connected."""
    return nx.is_connected(g.nx_graph)


def is_biconnected(g: PlaneGraph) -> bool:
    """
    Whether the graph is biconnected.

    A single vertex and a single edge count as biconnected.
    """
    if len(g.vertex_ids) == 1:
        return True
    return nx.is_biconnected(g.nx_graph)


def is_triconnected(g: PlaneGraph) -> bool:
    """
    Whether the graph stays connected after deleting any one or two vertices.

    Graphs with three or fewer vertices are triconnected exactly when they are complete on three vertices
    (K3); smaller graphs are not. Larger graphs are checked by brute force over all 1- and 2-vertex deletions.
    """
    n = len(g.vertex_ids)
    if n < 3:
        return False
    if n == 3:
        return len(g.edges) == 3
    graph = g.nx_graph
    if not nx.is_connected(graph):
        return False
    for size in (1, 2):
        for removed in combinations(g.vertex_ids, size):
            remaining = [v for v in g.vertex_ids if v not in removed]
            if not nx.is_connected(graph.subgraph(remaining)):
                return False
    return True


def face_boundary_is_simple_cycle(f: Face) -> bool:
    """Whether the face boundary is a cycle of at least three darts visiting no vertex twice."""
    return len(f.boundary) >= 3 and len(f.vertex_set) == len(f.boundary)


def face_intersection(f1: Face, f2: Face) -> Subgraph:
    """
    Intersect two face boundaries as subgraphs.

    Args:
        f1: First face.
        f2: Second, distinct face.

    Returns:
        Subgraph: Common boundary vertices and common boundary edges.

    """
    if f1.id == f2.id:
        raise PlaneGraphError(f"face_intersection needs two distinct faces, got face {f1.id} twice")
    return Subgraph(f1.vertex_set & f2.vertex_set, f1.edge_set & f2.edge_set)


def is_triangulated(g: PlaneGraph) -> bool:
    """Whether every bounded face has exactly three boundary edges."""
    return all(len(face) == 3 for face in g.bounded_faces)


def is_fully_triangulated(g: PlaneGraph) -> bool:
    """Whether the outer face is a triangle as well."""
    return is_triangulated(g) and len(g.outer) == 3


def face_vertex_count(f: Face) -> int:
    """Number of distinct vertices on the face boundary."""
    return len(f.vertex_set)

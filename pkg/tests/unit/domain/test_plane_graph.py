"""Tests for rotation systems, face tracing and classical connectivity."""

from itertools import combinations

import networkx as nx
import numpy as np
import pytest

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
from pytutte.domain.models.plane_graph import (
    PlaneGraph,
    Subgraph,
    canonical_cycle,
    edge_key,
    euler_check,
    face_boundary_is_simple_cycle,
    face_intersection,
    face_vertex_count,
    is_biconnected,
    is_connected,
    is_fully_triangulated,
    is_triangulated,
    is_triconnected,
    same_cycle,
    subgraph_is_connected,
    subgraph_is_simple_path,
    trace_faces,
)
from pytutte.utils import instances

K4_ROTATION = {"a": ["b", "d", "c"], "b": ["c", "d", "a"], "c": ["a", "d", "b"], "d": ["a", "b", "c"]}


def face_with(g: PlaneGraph, vertices: set[str]):
    """Return the unique bounded face with the given vertex set."""
    matches = [f for f in g.bounded_faces if f.vertex_set == vertices]
    assert len(matches) == 1
    return matches[0]


def test_edge_key_is_sorted() -> None:
    """Test that edges are normalised to sorted pairs."""
    assert edge_key("b", "a") == ("a", "b")
    assert edge_key("a", "b") == ("a", "b")


def test_canonical_cycle_picks_smallest_rotation() -> None:
    """Test canonical rotation of a cyclic sequence."""
    assert canonical_cycle(("c", "a", "b")) == ("a", "b", "c")
    assert canonical_cycle(()) == ()
    assert same_cycle(("b", "c", "a"), ("a", "b", "c"))
    assert not same_cycle(("a", "c", "b"), ("a", "b", "c"))


def test_build_triangle_traces_two_faces() -> None:
    """Test that a triangle has one bounded and one outer face."""
    g = PlaneGraph.build_from_rotation(["a", "b", "c"], {"a": ["b", "c"], "b": ["c", "a"], "c": ["a", "b"]}, ["a", "b", "c"])

    assert len(g.faces) == 2
    assert len(g.bounded_faces) == 1
    assert g.bounded_faces[0].vertices in {("a", "b", "c"), ("b", "c", "a"), ("c", "a", "b")}
    assert g.outer_cycle == ("a", "b", "c")
    assert g.internal_vertices == ()
    assert g.external_vertices == frozenset("abc")


def test_outer_spec_by_face_id() -> None:
    """Test selecting the outer face by traced face id."""
    rotation = {"a": ["b", "c"], "b": ["c", "a"], "c": ["a", "b"]}
    by_cycle = PlaneGraph.build_from_rotation("abc", rotation, ["a", "b", "c"])
    by_id = PlaneGraph.build_from_rotation("abc", rotation, by_cycle.outer_face)

    assert by_id.outer_face == by_cycle.outer_face
    assert by_id.outer_cycle == ("a", "b", "c")


def test_outer_spec_in_clockwise_order_selects_other_face() -> None:
    """Test that listing the triangle clockwise makes the other face the outer one."""
    rotation = {"a": ["b", "c"], "b": ["c", "a"], "c": ["a", "b"]}
    g = PlaneGraph.build_from_rotation("abc", rotation, ["a", "c", "b"])

    assert g.outer_cycle == ("a", "c", "b")


def test_outer_face_not_found() -> None:
    """Test that an outer cycle matching no face is rejected."""
    with pytest.raises(OuterFaceNotFound):
        PlaneGraph.build_from_rotation("abc", {"a": ["b", "c"], "b": ["c", "a"], "c": ["a", "b"]}, ["a", "b"])
    with pytest.raises(OuterFaceNotFound):
        PlaneGraph.build_from_rotation("abc", {"a": ["b", "c"], "b": ["c", "a"], "c": ["a", "b"]}, 7)


def test_empty_graph_rejected() -> None:
    """Test that a graph needs a vertex."""
    with pytest.raises(EmptyGraph):
        PlaneGraph.build_from_rotation([], {}, [])


def test_asymmetric_rotation_names_vertex() -> None:
    """Test that one-sided adjacency is rejected with the offending vertices."""
    with pytest.raises(AsymmetricRotation) as excinfo:
        PlaneGraph.build_from_rotation(["a", "b"], {"a": ["b"], "b": []}, ["a"])

    assert excinfo.value.edge == ("b", "a")
    assert "'b' does not list 'a'" in str(excinfo.value)


def test_self_loop_rejected() -> None:
    """Test that a vertex cannot be its own neighbour."""
    with pytest.raises(SelfLoop):
        PlaneGraph.build_from_rotation(["a"], {"a": ["a"]}, ["a"])


def test_duplicate_edge_rejected() -> None:
    """Test that a neighbour cannot repeat in one rotation list."""
    with pytest.raises(DuplicateEdge):
        PlaneGraph.build_from_rotation(["a", "b"], {"a": ["b", "b"], "b": ["a"]}, ["a"])


def test_unknown_vertex_rejected() -> None:
    """Test that rotation lists only refer to declared vertices."""
    with pytest.raises(UnknownVertex):
        PlaneGraph.build_from_rotation(["a"], {"a": ["z"]}, ["a"])
    with pytest.raises(UnknownVertex):
        PlaneGraph.build_from_rotation(["a"], {"z": []}, ["a"])


def test_duplicate_vertex_ids_rejected() -> None:
    """Test that vertex ids must be unique."""
    with pytest.raises(PlaneGraphError):
        PlaneGraph.build_from_rotation(["a", "a"], {}, ["a"])


def test_k4_is_planar_with_consistent_rotation() -> None:
    """Test that a planar rotation system of K4 traces four triangles."""
    g = PlaneGraph.build_from_rotation("abcd", K4_ROTATION, ["a", "b", "c"])

    assert len(g.faces) == 4
    assert all(len(f) == 3 for f in g.faces)
    assert g.internal_vertices == ("d",)
    assert euler_check(g)


def test_non_planar_rotation_rejected() -> None:
    """Test that reversing the rotation at one vertex of K4 breaks Euler's formula."""
    rotation = dict(K4_ROTATION)
    rotation["d"] = ["a", "c", "b"]

    with pytest.raises(NonPlanarRotation) as excinfo:
        PlaneGraph.build_from_rotation("abcd", rotation, 0)

    assert excinfo.value.vertex == "a"


def test_isolated_vertex_has_single_empty_face() -> None:
    """Test the edgeless graph."""
    g = PlaneGraph.build_from_rotation(["a"], {}, ["a"])

    assert len(g.faces) == 1
    assert g.outer.boundary == ()
    assert euler_check(g)
    assert is_biconnected(g)
    assert not is_triconnected(g)


def test_single_edge() -> None:
    """Test K2: one traced face, biconnected, not triconnected."""
    g = PlaneGraph.build_from_rotation(["a", "b"], {"a": ["b"], "b": ["a"]}, 0)

    assert len(g.faces) == 1
    assert len(g.outer) == 2
    assert not face_boundary_is_simple_cycle(g.outer)
    assert euler_check(g)
    assert is_biconnected(g)
    assert not is_triconnected(g)


@pytest.mark.parametrize(
    "name",
    ["triangle", "triangle_with_centre", "square_with_diagonal", "collapse", "theta", "split_hexagon", "k4", "octahedron"],
)
def test_euler_holds_for_catalogue(name: str) -> None:
    """Test Euler's formula on connected catalogue instances."""
    report = euler_check(instances.named_graph(name))

    assert report.holds
    assert report.components == 1


def test_euler_counts_components_once() -> None:
    """Test Euler's formula on two disjoint triangles: three geometric faces."""
    g = instances.two_triangles().graph()
    report = euler_check(g)

    assert len(g.faces) == 4
    assert report.faces == 3
    assert report.components == 2
    assert report.holds
    assert not is_connected(g)
    assert not is_biconnected(g)


def test_path_is_a_tree_with_one_face() -> None:
    """Test that a path traces a single face."""
    g = instances.path_graph(4).graph()

    assert len(g.faces) == 1
    assert euler_check(g)
    assert is_connected(g)
    assert not is_biconnected(g)


def test_trace_faces_matches_stored_faces() -> None:
    """Test that tracing is deterministic."""
    g = instances.octahedron().graph()

    assert trace_faces(g) == list(g.faces)


def test_every_dart_on_exactly_one_face() -> None:
    """Test that faces partition the darts."""
    g = instances.split_hexagon().graph()
    darts = [dart for face in g.faces for dart in face.boundary]

    assert len(darts) == len(set(darts)) == 2 * len(g.edges)


def test_bounded_faces_are_counterclockwise_in_drawing() -> None:
    """Test that the traced bounded faces of a drawing have positive area."""
    drawing = instances.octahedron()
    g = drawing.graph()

    for face in g.bounded_faces:
        pts = [drawing.coords[v] for v in face.vertices]
        area = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1], strict=True))
        assert area > 0


def test_triconnectivity() -> None:
    """Test triconnectivity on small graphs, K3 included."""
    assert is_triconnected(instances.triangle().graph())
    assert is_triconnected(instances.k4().graph())
    assert is_triconnected(instances.octahedron().graph())
    assert not is_triconnected(instances.square_with_diagonal().graph())
    assert not is_triconnected(instances.cycle_graph(4).graph())


def test_biconnectivity() -> None:
    """Test biconnectivity of catalogue instances."""
    assert is_biconnected(instances.square_with_diagonal().graph())
    assert is_biconnected(instances.collapse_instance().graph())
    assert not is_biconnected(instances.bowtie().graph())


def test_bowtie_outer_face_is_not_simple() -> None:
    """Test that the outer face of two triangles sharing a vertex repeats that vertex."""
    g = instances.bowtie().graph()

    assert not face_boundary_is_simple_cycle(g.outer)
    assert g.outer.vertices.count("c") == 2
    assert face_vertex_count(g.outer) == 5


def test_face_intersection_of_quadril() -> None:
    """Test the boundary intersection of the two triangles of the square with a diagonal."""
    g = instances.square_with_diagonal().graph()
    abc = face_with(g, {"a", "b", "c"})
    acd = face_with(g, {"a", "c", "d"})

    common = face_intersection(abc, acd)

    assert common.vertex_set == frozenset({"a", "c"})
    assert common.edge_set == frozenset({("a", "c")})
    assert subgraph_is_simple_path(common)


def test_face_intersection_needs_distinct_faces() -> None:
    """Test that a face cannot be intersected with itself."""
    g = instances.triangle().graph()

    with pytest.raises(PlaneGraphError):
        face_intersection(g.outer, g.outer)


def test_collapse_inner_face_meets_outer_in_two_points() -> None:
    """Test the disconnected intersection of the inner square and the outer face."""
    g = instances.collapse_instance().graph()
    inner = face_with(g, {"v1", "u2", "v3", "u4"})

    common = face_intersection(inner, g.outer)

    assert common.vertex_set == frozenset({"v1", "v3"})
    assert common.edge_set == frozenset()
    assert not subgraph_is_connected(common)


def test_subgraph_predicates() -> None:
    """Test connectivity and path predicates on small subgraphs."""
    assert subgraph_is_connected(Subgraph())
    assert not subgraph_is_simple_path(Subgraph())
    assert subgraph_is_simple_path(Subgraph(frozenset({"a"})))
    assert subgraph_is_simple_path(Subgraph(frozenset("abc"), frozenset({("b", "a"), ("b", "c")})))
    triangle = Subgraph(frozenset("abc"), frozenset({("a", "b"), ("b", "c"), ("a", "c")}))
    assert subgraph_is_connected(triangle)
    assert not subgraph_is_simple_path(triangle)
    assert not subgraph_is_connected(Subgraph(frozenset("ab")))


def test_subgraph_set_operations() -> None:
    """Test union and intersection of subgraphs."""
    first = Subgraph(frozenset("ab"), frozenset({("b", "a")}))
    second = Subgraph(frozenset("bc"), frozenset({("b", "c")}))

    assert (first | second).vertex_set == frozenset("abc")
    assert (first | second).edge_set == frozenset({("a", "b"), ("b", "c")})
    assert (first & second) == Subgraph(frozenset("b"))


def test_subgraph_rejects_loops() -> None:
    """Test that subgraph edges cannot be loops."""
    with pytest.raises(SelfLoop):
        Subgraph(frozenset("a"), frozenset({("a", "a")}))


def test_triangulated_predicates() -> None:
    """Test the triangulation predicates."""
    assert is_triangulated(instances.square_with_diagonal().graph())
    assert not is_fully_triangulated(instances.square_with_diagonal().graph())
    assert is_fully_triangulated(instances.k4().graph())
    assert not is_triangulated(instances.collapse_instance().graph())


def test_report_order_sorts_by_vertex_lists() -> None:
    """Test that faces are reported by their sorted vertex lists."""
    g = instances.square_with_diagonal().graph()

    keys = [f.sort_key() for f in g.faces_in_report_order()]

    assert keys == sorted(keys)
    assert keys[0] == ("a", "b", "c")


def test_graph_equality_ignores_face_order() -> None:
    """Test that graphs compare by vertices and rotation."""
    first = instances.k4().graph()
    second = PlaneGraph.build_from_rotation(first.vertex_ids, first.rotation, first.outer_cycle)

    assert first == second


def random_edge_subset(seed: int) -> PlaneGraph:
    """A random subgraph of a random triangulation; may be disconnected and carry isolated vertices."""
    drawing = instances.random_triangulation_drawing(5, 6, seed)
    keep = np.random.default_rng(seed).uniform(size=len(drawing.edges)) < 0.6
    edges = [edge for edge, kept in zip(drawing.edges, keep, strict=True) if kept] or [drawing.edges[0]]
    return instances.from_drawing(drawing.coords, edges)


def with_cut_vertex(seed: int) -> PlaneGraph:
    """A random biconnected drawing with edges removed, keeping it connected, until it has a cut vertex."""
    drawing = instances.random_biconnected_drawing(10, seed)
    graph = nx.Graph(list(drawing.edges))
    rng = np.random.default_rng(seed)
    while nx.is_biconnected(graph):
        candidates = [e for e in sorted(graph.edges) if nx.is_connected(nx.restricted_view(graph, [], [e]))]
        graph.remove_edge(*candidates[int(rng.integers(0, len(candidates)))])
    return instances.from_drawing(drawing.coords, list(graph.edges))


@pytest.mark.parametrize("seed", range(40))
def test_euler_holds_for_random_rotation_systems(seed: int) -> None:
    """Test Euler's formula on random plane graphs with any number of components."""
    g = random_edge_subset(seed)

    report = euler_check(g)

    assert report.holds
    assert report.vertices == 11
    assert report.components == nx.number_connected_components(g.nx_graph)


@pytest.mark.parametrize("seed", range(30))
def test_biconnected_exactly_when_faces_are_simple(seed: int) -> None:
    """Test both directions on connected graphs: biconnected graphs have simple faces, a cut vertex breaks one."""
    whole = instances.random_biconnected(10, seed)
    cut = with_cut_vertex(seed)

    assert is_biconnected(whole)
    assert all(face_boundary_is_simple_cycle(f) for f in whole.faces)
    assert is_connected(cut)
    assert not is_biconnected(cut)
    assert not all(face_boundary_is_simple_cycle(f) for f in cut.faces)


@pytest.mark.parametrize("name", ["collapse", "theta", "split_hexagon", "octahedron", "bowtie"])
def test_face_intersection_is_symmetric(name: str) -> None:
    """Test that intersecting two faces does not depend on their order."""
    g = instances.named_graph(name)

    for f1, f2 in combinations(g.faces, 2):
        assert face_intersection(f1, f2) == face_intersection(f2, f1)


def test_opposite_squares_of_a_row_do_not_meet() -> None:
    """Test that the two end squares of three squares in a row have an empty intersection."""
    g = instances.grid(1, 3).graph()
    left = face_with(g, {"g0_0", "g0_1", "g1_0", "g1_1"})
    right = face_with(g, {"g0_2", "g0_3", "g1_2", "g1_3"})

    common = face_intersection(left, right)

    assert common.is_empty
    assert subgraph_is_connected(common)

"""Named plane graph instances and seeded random generators.

Every instance is defined by a straight-line drawing; :func:`from_drawing` derives the counterclockwise rotation
system from the drawing by angular sort and takes the traced face of most negative signed area as the outer face.
"""

import logging
import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from pytutte.domain.models.plane_graph import Edge, PlaneGraph, edge_key
from pytutte.utils.geometry import signed_area

logger = logging.getLogger("pytutte.instances")

Point = tuple[float, float]


@dataclass(frozen=True)
class Drawing:
    """A straight-line drawing: coordinates and edges."""

    coords: Mapping[str, Point]
    edges: tuple[Edge, ...]

    def graph(self) -> PlaneGraph:
        """The plane graph this drawing realises."""
        return from_drawing(self.coords, self.edges)


def from_drawing(coords: Mapping[str, Point], edges: Iterable[tuple[str, str]]) -> PlaneGraph:
    """
    Derive a plane graph from a straight-line drawing.

    Args:
        coords: Position of every vertex.
        edges: Unordered vertex pairs; the drawing must be crossing-free.

    Returns:
        PlaneGraph: Rotation lists sorted by angle, outer face chosen by signed area.

    """
    rotation: dict[str, list[str]] = {v: [] for v in coords}
    for u, v in {edge_key(u, v) for u, v in edges}:
        rotation[u].append(v)
        rotation[v].append(u)
    for u, neighbours in rotation.items():
        ux, uy = coords[u]
        neighbours.sort(key=lambda w: math.atan2(coords[w][1] - uy, coords[w][0] - ux))
    first = PlaneGraph.build_from_rotation(coords.keys(), rotation, 0)
    areas = [signed_area(np.array([coords[v] for v in face.vertices])) for face in first.faces]
    outer = int(np.argmin(areas)) if areas else 0
    if outer == first.outer_face:
        return first
    return PlaneGraph.build_from_rotation(coords.keys(), rotation, outer)


def _cycle_edges(vertices: list[str]) -> list[Edge]:
    return [edge_key(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def _circle(names: list[str], radius: float = 1.0, phase: float = 0.0) -> dict[str, Point]:
    n = len(names)
    return {
        name: (radius * math.cos(phase + 2 * math.pi * k / n), radius * math.sin(phase + 2 * math.pi * k / n))
        for k, name in enumerate(names)
    }


def triangle() -> Drawing:
    """The 3-cycle ``a, b, c``."""
    return Drawing({"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0)}, (("a", "b"), ("b", "c"), ("a", "c")))


def triangle_with_centre() -> Drawing:
    """A triangle with one internal vertex ``z`` joined to all three corners."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0), "z": (0.3, 0.3)}
    return Drawing(coords, (("a", "b"), ("b", "c"), ("a", "c"), ("a", "z"), ("b", "z"), ("c", "z")))


def square_with_diagonal() -> Drawing:
    """A square with one diagonal; nodally 3-connected but not triconnected."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (1.0, 1.0), "d": (0.0, 1.0)}
    return Drawing(coords, (*_cycle_edges(["a", "b", "c", "d"]), ("a", "c")))


def square_with_centre() -> Drawing:
    """A square with an internal vertex ``z`` joined to all four corners."""
    coords = {"a": (-1.0, -1.0), "b": (1.0, -1.0), "c": (1.0, 1.0), "d": (-1.0, 1.0), "z": (0.2, 0.1)}
    return Drawing(coords, (*_cycle_edges(["a", "b", "c", "d"]), *((v, "z") for v in "abcd")))


def collapse_instance() -> Drawing:
    """
    Two 4-cycles sharing the opposite vertices ``v1`` and ``v3``.

    The outer cycle is ``v1 v2 v3 v4`` and the inner cycle ``v1 u2 v3 u4``. Its barycentric map collapses the
    inner face onto the segment ``v1 v3``.
    """
    coords = {
        "v1": (0.0, 0.0),
        "v2": (2.0, 0.0),
        "v3": (2.0, 2.0),
        "v4": (0.0, 2.0),
        "u2": (1.5, 0.5),
        "u4": (0.5, 1.5),
    }
    return Drawing(coords, (*_cycle_edges(["v1", "v2", "v3", "v4"]), *_cycle_edges(["v1", "u2", "v3", "u4"])))


def theta_graph() -> Drawing:
    """
    Nodes ``a`` and ``b`` joined by paths of length 1, 2 and 2; the length-1 path is an external edge.

    Nodally 3-connected yet not convex embeddable: the face ``a c b d`` is an inverted subgraph blocker.
    """
    coords = {"a": (0.0, 0.0), "b": (2.0, 0.0), "c": (1.0, 2.0), "d": (1.0, 0.6)}
    return Drawing(coords, (("a", "b"), ("b", "c"), ("a", "c"), ("a", "d"), ("b", "d")))


def split_hexagon() -> Drawing:
    """
    A hexagon cut by the 4-cycle ``p x q y``.

    Convex embeddable, but not nodally 3-connected: the face ``p x q y`` meets the outer face in ``{p, q}`` only.
    """
    coords = {
        "p": (-2.0, 0.0),
        "a1": (-1.0, 1.7),
        "a2": (1.0, 1.7),
        "q": (2.0, 0.0),
        "b1": (1.0, -1.7),
        "b2": (-1.0, -1.7),
        "x": (0.0, 0.6),
        "y": (0.0, -0.6),
    }
    hexagon = _cycle_edges(["p", "b2", "b1", "q", "a2", "a1"])
    return Drawing(coords, (*hexagon, *_cycle_edges(["p", "y", "q", "x"]), ("a1", "x"), ("b1", "y")))


def k4() -> Drawing:
    """K4 with a triangular outer face."""
    coords = {"a": (0.0, 0.0), "b": (2.0, 0.0), "c": (1.0, 2.0), "d": (1.0, 0.7)}
    return Drawing(coords, (("a", "b"), ("b", "c"), ("a", "c"), ("a", "d"), ("b", "d"), ("c", "d")))


def octahedron() -> Drawing:
    """The octahedron with outer triangle ``a b c``; ``x``, ``y``, ``z`` are opposite ``a``, ``b``, ``c``."""
    coords = {
        "a": (0.0, 0.0),
        "b": (4.0, 0.0),
        "c": (2.0, 3.5),
        "x": (2.6, 1.7),
        "y": (1.4, 1.7),
        "z": (2.0, 0.7),
    }
    edges = (
        *_cycle_edges(["a", "b", "c"]),
        *_cycle_edges(["x", "y", "z"]),
        ("a", "z"),
        ("b", "z"),
        ("b", "x"),
        ("c", "x"),
        ("c", "y"),
        ("a", "y"),
    )
    return Drawing(coords, edges)


def path_graph(n: int = 3) -> Drawing:
    """A path ``p0 - p1 - ... - p(n-1)`` drawn on a gentle arc."""
    names = [f"p{i}" for i in range(n)]
    coords = {name: (float(i), 0.1 * i * i) for i, name in enumerate(names)}
    return Drawing(coords, tuple(edge_key(names[i], names[i + 1]) for i in range(n - 1)))


def cycle_graph(n: int = 4) -> Drawing:
    """A plain ``n``-cycle ``c0 ... c(n-1)``."""
    names = [f"c{i}" for i in range(n)]
    return Drawing(_circle(names), tuple(_cycle_edges(names)))


def grid(rows: int, cols: int) -> Drawing:
    """A ``rows`` x ``cols`` grid of unit squares."""
    coords = {f"g{i}_{j}": (float(j), float(i)) for i in range(rows + 1) for j in range(cols + 1)}
    edges = [edge_key(f"g{i}_{j}", f"g{i}_{j + 1}") for i in range(rows + 1) for j in range(cols)]
    edges += [edge_key(f"g{i}_{j}", f"g{i + 1}_{j}") for i in range(rows) for j in range(cols + 1)]
    return Drawing(coords, tuple(edges))


def prism(n: int) -> Drawing:
    """Two concentric ``n``-gons ``o*`` (outer) and ``i*`` (inner) joined by spokes."""
    outer = [f"o{k}" for k in range(n)]
    inner = [f"i{k}" for k in range(n)]
    coords = {**_circle(outer, 2.0), **_circle(inner, 1.0)}
    return Drawing(coords, (*_cycle_edges(outer), *_cycle_edges(inner), *zip(outer, inner, strict=True)))


def wheel(n: int) -> Drawing:
    """A rim ``r0 ... r(n-1)`` with hub ``h`` joined to every rim vertex."""
    rim = [f"r{k}" for k in range(n)]
    coords = {**_circle(rim), "h": (0.1, 0.05)}
    return Drawing(coords, (*_cycle_edges(rim), *((r, "h") for r in rim)))


def two_triangles() -> Drawing:
    """Two disjoint triangles."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (0.0, 1.0), "d": (3.0, 0.0), "e": (4.0, 0.0), "f": (3.0, 1.0)}
    return Drawing(coords, (*_cycle_edges(["a", "b", "c"]), *_cycle_edges(["d", "e", "f"])))


def bowtie() -> Drawing:
    """Two triangles sharing the single vertex ``c``."""
    coords = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (1.0, 1.0), "d": (2.0, 1.0), "e": (1.0, 2.0)}
    return Drawing(coords, (*_cycle_edges(["a", "b", "c"]), *_cycle_edges(["c", "d", "e"])))


NAMED_INSTANCES: dict[str, Callable[[], Drawing]] = {
    "triangle": triangle,
    "triangle_with_centre": triangle_with_centre,
    "square_with_diagonal": square_with_diagonal,
    "square_with_centre": square_with_centre,
    "collapse": collapse_instance,
    "theta": theta_graph,
    "split_hexagon": split_hexagon,
    "k4": k4,
    "octahedron": octahedron,
    "path": path_graph,
    "cycle": cycle_graph,
    "two_triangles": two_triangles,
    "bowtie": bowtie,
}


def named_graph(name: str) -> PlaneGraph:
    """
    Build a catalogue instance by name.

    Raises:
        KeyError: Unknown name.

    """
    return NAMED_INSTANCES[name]().graph()


def random_triangulation_drawing(n_boundary: int, n_internal: int, seed: int) -> Drawing:
    """
    Delaunay triangulation of a random point set in convex position on its boundary.

    Boundary points sit on the unit circle at jittered angles; internal points are uniform in a disc that
    stays inside the boundary polygon, so the convex hull is exactly that polygon.

    Args:
        n_boundary: Number of boundary vertices (at least 3).
        n_internal: Number of internal vertices (at least 1).
        seed: Seed for ``numpy.random.default_rng``.

    Returns:
        Drawing: The triangulated drawing.

    """
    if n_boundary < 3 or n_internal < 1:
        raise ValueError("need at least 3 boundary and 1 internal vertex")
    rng = np.random.default_rng(seed)
    step = 2 * math.pi / n_boundary
    angles = np.arange(n_boundary) * step + rng.uniform(-0.15, 0.15, n_boundary) * step
    gaps = np.diff(np.append(angles, angles[0] + 2 * math.pi))
    inner_radius = 0.9 * math.cos(float(gaps.max()) / 2)
    boundary = np.column_stack([np.cos(angles), np.sin(angles)])
    radii = inner_radius * np.sqrt(rng.uniform(0.0, 1.0, n_internal))
    thetas = rng.uniform(0.0, 2 * math.pi, n_internal)
    internal = np.column_stack([radii * np.cos(thetas), radii * np.sin(thetas)])
    points = np.vstack([boundary, internal])
    names = [f"b{k:02d}" for k in range(n_boundary)] + [f"v{k:02d}" for k in range(n_internal)]
    edges: set[Edge] = set()
    for simplex in Delaunay(points).simplices:
        for i in range(3):
            edges.add(edge_key(names[simplex[i]], names[simplex[(i + 1) % 3]]))
    coords = {name: (float(x), float(y)) for name, (x, y) in zip(names, points, strict=True)}
    return Drawing(coords, tuple(sorted(edges)))


def random_triangulation(n_boundary: int, n_internal: int, seed: int) -> PlaneGraph:
    """Plane graph of :func:`random_triangulation_drawing`."""
    return random_triangulation_drawing(n_boundary, n_internal, seed).graph()


def random_biconnected_drawing(max_vertices: int, seed: int) -> Drawing:
    """
    A random biconnected drawing with at most ``max_vertices`` vertices.

    Starts from a small random triangulation, deletes random edges as long as the graph stays biconnected and
    subdivides random edges at their midpoints while vertices remain in the budget.

    Args:
        max_vertices: Vertex budget (at least 4).
        seed: Seed for ``numpy.random.default_rng``.

    Returns:
        Drawing: A crossing-free biconnected drawing.

    """
    if max_vertices < 4:
        raise ValueError("max_vertices must be at least 4")
    rng = np.random.default_rng(seed)
    total = int(rng.integers(4, max_vertices + 1))
    n_subdivisions = int(rng.integers(0, total - 3))
    n_core = total - n_subdivisions
    n_boundary = int(rng.integers(3, n_core))
    base = random_triangulation_drawing(n_boundary, n_core - n_boundary, int(rng.integers(0, 2**31)))
    coords = dict(base.coords)
    graph = nx.Graph(list(base.edges))

    for _ in range(int(rng.integers(0, graph.number_of_edges()))):
        candidates = sorted(graph.edges)
        u, v = candidates[int(rng.integers(0, len(candidates)))]
        graph.remove_edge(u, v)
        if not nx.is_biconnected(graph):
            graph.add_edge(u, v)

    for k in range(n_subdivisions):
        candidates = sorted(graph.edges)
        u, v = candidates[int(rng.integers(0, len(candidates)))]
        w = f"s{k:02d}"
        coords[w] = ((coords[u][0] + coords[v][0]) / 2, (coords[u][1] + coords[v][1]) / 2)
        graph.remove_edge(u, v)
        graph.add_edge(u, w)
        graph.add_edge(w, v)

    logger.debug(f"Random biconnected drawing: {graph.number_of_nodes()} vertices, {graph.number_of_edges()} edges")
    return Drawing(coords, tuple(sorted(edge_key(u, v) for u, v in graph.edges)))


def random_biconnected(max_vertices: int, seed: int) -> PlaneGraph:
    """Plane graph of :func:`random_biconnected_drawing`."""
    return random_biconnected_drawing(max_vertices, seed).graph()

"""Merging adjacent bounded faces along their common boundary path."""

from itertools import combinations

from pytutte.config import Config
from pytutte.domain.errors import FaceNotBounded, FacesNotAdjacent, IntersectionDisconnected, MergeImpossible
from pytutte.domain.models.plane_graph import (
    Edge,
    Face,
    PlaneGraph,
    Subgraph,
    edge_key,
    face_intersection,
    subgraph_is_connected,
    subgraph_is_simple_path,
)
from pytutte.utils.class_logger import LoggerMixin

MergeStep = tuple[int, int]


class FaceMerger(LoggerMixin):
    """Face merge operation and merge planning."""

    def __init__(self, config: Config | None = None) -> None:
        """Initialise the merger."""
        self.config = config or Config()

    def merge_faces(self, g: PlaneGraph, f1: int, f2: int) -> PlaneGraph:
        """
        Merge two bounded faces whose boundaries meet in a simple path ``Q``.

        The edges of ``Q`` and its inner vertices are deleted; the outer boundary is left untouched.

        Args:
            g: The plane graph.
            f1: First bounded face id.
            f2: Second bounded face id.

        Returns:
            PlaneGraph: The graph with the two faces merged into one.

        Raises:
            FaceNotBounded: One of the faces is the outer face or both ids are the same.
            FacesNotAdjacent: The faces share no edge.
            IntersectionDisconnected: The common boundary is not a single path.

        """
        first, second = self._bounded_pair(g, f1, f2)
        path = face_intersection(first, second)
        if not path.edge_set:
            raise FacesNotAdjacent(f"faces {f1} and {f2} share no boundary edge")
        if not subgraph_is_simple_path(path):
            raise IntersectionDisconnected(f"faces {f1} and {f2} meet in a set that is not a single path")
        inner = _inner_vertices(path)
        rotation = {
            u: [v for v in neighbours if edge_key(u, v) not in path.edge_set]
            for u, neighbours in g.rotation.items()
            if u not in inner
        }
        merged = PlaneGraph.build_from_rotation(rotation.keys(), rotation, g.outer_cycle)
        self.logger.debug(f"Merged faces {f1} and {f2}: removed {len(path.edge_set)} edges and {len(inner)} vertices")
        return merged

    def admissible_merge_pairs(self, g: PlaneGraph) -> list[MergeStep]:
        """
        List bounded face pairs whose merge keeps a convex embeddable graph convex embeddable.

        A pair qualifies when its common boundary is a path with at least one edge, the merged face meets every
        other bounded face in a connected set, and the merged face does not contain both ends of an external
        edge without containing the edge.

        Args:
            g: The plane graph.

        Returns:
            list[MergeStep]: Face id pairs in report order.

        """
        bounded = [f for f in g.faces_in_report_order() if not f.is_outer]
        outer_edges = g.outer_edges
        pairs = []
        for first, second in combinations(bounded, 2):
            path = face_intersection(first, second)
            if not path.edge_set or not subgraph_is_simple_path(path):
                continue
            merged = _merged_boundary(first, second, path)
            if any(
                not subgraph_is_connected(merged & other.as_subgraph())
                for other in bounded
                if other.id not in (first.id, second.id)
            ):
                continue
            if any(_meets_both_ends(merged, edge) for edge in outer_edges):
                continue
            pairs.append((first.id, second.id))
        return pairs

    def plan_merge_sequence(self, g: PlaneGraph) -> list[MergeStep]:
        """
        Find a sequence of admissible merges that leaves a single bounded face.

        Depth-first search over admissible pairs in report order; dead ends are remembered by edge set.

        Args:
            g: The plane graph.

        Returns:
            list[MergeStep]: Face id pairs, each referring to the graph produced by the previous merges.

        Raises:
            MergeImpossible: Every order of admissible merges gets stuck.

        """
        dead_ends: set[frozenset[Edge]] = set()

        def search(current: PlaneGraph) -> list[MergeStep] | None:
            if len(current.bounded_faces) <= 1:
                return []
            if current.edges in dead_ends:
                return None
            for step in self.admissible_merge_pairs(current):
                rest = search(self.merge_faces(current, *step))
                if rest is not None:
                    return [step, *rest]
            dead_ends.add(current.edges)
            return None

        plan = search(g)
        if plan is None:
            self.logger.warning(f"No merge sequence reduces the {len(g.bounded_faces)} bounded faces to one")
            raise MergeImpossible("no sequence of admissible merges leaves one bounded face")
        self.logger.info(f"Planned {len(plan)} merges")
        return plan

    def apply_merge_sequence(self, g: PlaneGraph, steps: list[MergeStep]) -> list[PlaneGraph]:
        """Apply merges in order and return every intermediate graph, the input first."""
        graphs = [g]
        for f1, f2 in steps:
            graphs.append(self.merge_faces(graphs[-1], f1, f2))
        return graphs

    def _bounded_pair(self, g: PlaneGraph, f1: int, f2: int) -> tuple[Face, Face]:
        if f1 == f2:
            raise FaceNotBounded(f"cannot merge face {f1} with itself")
        for fid in (f1, f2):
            if not 0 <= fid < len(g.faces):
                raise FaceNotBounded(f"face {fid} does not exist")
            if fid == g.outer_face:
                raise FaceNotBounded(f"face {fid} is the outer face")
        return g.face(f1), g.face(f2)


def _inner_vertices(path: Subgraph) -> frozenset[str]:
    degree: dict[str, int] = {}
    for u, v in path.edge_set:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    return frozenset(v for v, d in degree.items() if d == 2)


def _merged_boundary(first: Face, second: Face, path: Subgraph) -> Subgraph:
    inner = _inner_vertices(path)
    return Subgraph(
        (first.vertex_set | second.vertex_set) - inner,
        (first.edge_set | second.edge_set) - path.edge_set,
    )


def _meets_both_ends(merged: Subgraph, edge: Edge) -> bool:
    a, b = edge
    return a in merged.vertex_set and b in merged.vertex_set and edge not in merged.edge_set

"""Geometric validation of straight-line maps of plane graphs."""

from collections.abc import Mapping

import numpy as np
from scipy.spatial import cKDTree

from pytutte.config import Config
from pytutte.domain.errors import DegenerateFace, MissingCoordinate, SampleOnEdge, ValidationError
from pytutte.domain.models.plane_graph import Edge, Face, PlaneGraph, face_boundary_is_simple_cycle
from pytutte.domain.models.validation import (
    CoveringViolation,
    EdgePair,
    FaceImage,
    FaceKind,
    SegmentRelation,
    ValidationReport,
)
from pytutte.utils.class_logger import LoggerMixin
from pytutte.utils.geometry import (
    collinear_overlap,
    crossing_number,
    diameter,
    is_full_turn,
    line_distance,
    orientation,
    point_segment_distance,
    segment_distance,
    segments_intersect_exact,
    signed_area,
    turning_angles,
)

Point = tuple[float, float]


class EmbeddingValidator(LoggerMixin):
    """Decides whether a map is an embedding and classifies its degeneracies."""

    def __init__(self, config: Config | None = None) -> None:
        """
        Initialise the validator.

        Args:
            config (Config, optional): Supplies the relative tolerance, sample count and retry budget.

        """
        self.config = config or Config()

    def scale(self, g: PlaneGraph, coords: Mapping[str, Point]) -> float:
        """Diameter of the outer boundary image, falling back to all points and then to one."""
        outer = np.array([coords[v] for v in g.outer_cycle], dtype=float).reshape(-1, 2)
        size = diameter(outer)
        if size == 0.0:
            size = diameter(np.array(list(coords.values()), dtype=float))
        return size if size > 0.0 else 1.0

    def validate(self, g: PlaneGraph, coords: Mapping[str, Point], samples: int | None = None) -> ValidationReport:
        """
        Check injectivity of a straight-line map and classify every bounded face image.

        ``is_embedding`` is decided by injectivity alone: distinct vertex points, no degenerate edges, and no
        two edge images meeting outside a shared endpoint. Pairs within the tolerance of such a contact without
        actually meeting are listed as suspect and do not count against the map.

        Args:
            g: The plane graph.
            coords: A point for every vertex.
            samples: When given and the map is injective, also run the covering number check with this many
                samples.

        Returns:
            ValidationReport: All findings.

        Raises:
            MissingCoordinate: Some vertex has no point.

        """
        for v in g.vertex_ids:
            if v not in coords:
                raise MissingCoordinate(v)
        scale = self.scale(g, coords)
        tau = self.config.tolerance * scale
        order = g.vertex_ids
        points = np.array([coords[v] for v in order], dtype=float).reshape(-1, 2)

        coincident = tuple(
            sorted(tuple(sorted((order[i], order[j]))) for i, j in cKDTree(points).query_pairs(r=tau))
        )
        edges = list(g.sorted_edges)
        position = {v: i for i, v in enumerate(order)}
        a = np.array([points[position[u]] for u, _ in edges]).reshape(-1, 2)
        b = np.array([points[position[v]] for _, v in edges]).reshape(-1, 2)
        lengths = np.hypot(*(b - a).T) if edges else np.zeros(0)
        degenerate = tuple(edge for edge, length in zip(edges, lengths, strict=True) if length <= tau)

        violations, suspects = self._edge_pairs(edges, a, b, lengths, tau)
        on_edge = self._vertices_on_edges(order, points, edges, a, b, tau)

        images = {f.id: self.classify_face_image(f, coords, scale) for f in g.faces_in_report_order() if not f.is_outer}
        nonconvex = tuple(fid for fid, image in images.items() if image.kind is FaceKind.OTHER)
        try:
            oriented = self.orientation_check(g, coords)
        except ValidationError:
            oriented = False

        is_embedding = not (coincident or degenerate or violations or on_edge)
        covering: tuple[CoveringViolation, ...] = ()
        if samples and is_embedding:
            covering = tuple(self.covering_number_check(g, coords, samples))
        for pair in suspects:
            self.logger.warning(f"Edges {pair.first} and {pair.second} are within tolerance of touching")
        self.logger.info(
            f"Validated map of {len(order)} vertices: embedding={is_embedding}, coincident={len(coincident)}, "
            f"degenerate={len(degenerate)}, crossing/overlap={len(violations)}, suspect={len(suspects)}"
        )
        return ValidationReport(
            is_embedding=is_embedding,
            degenerate_edges=degenerate,
            coincident_vertex_pairs=coincident,
            crossing_or_overlapping_edge_pairs=violations,
            vertex_on_edge=on_edge,
            suspect_pairs=suspects,
            nonconvex_faces=nonconvex,
            face_classifications=images,
            covering_number_violations=covering,
            orientation_preserved=oriented,
            scale=scale,
        )

    def _edge_pairs(
        self, edges: list[Edge], a: np.ndarray, b: np.ndarray, lengths: np.ndarray, tau: float
    ) -> tuple[tuple[EdgePair, ...], tuple[EdgePair, ...]]:
        violations: list[EdgePair] = []
        suspects: list[EdgePair] = []
        if len(edges) < 2:
            return (), ()
        first, second = np.triu_indices(len(edges), k=1)

        shared = np.array([bool(set(edges[i]) & set(edges[j])) for i, j in zip(first, second, strict=True)])
        # adjacent edges overlap when they leave the shared vertex in the same direction
        for i, j in zip(first[shared], second[shared], strict=True):
            if lengths[i] <= tau or lengths[j] <= tau:
                continue
            common = (set(edges[i]) & set(edges[j])).pop()
            pivot = a[i] if edges[i][0] == common else b[i]
            end_i = b[i] if edges[i][0] == common else a[i]
            end_j = b[j] if edges[j][0] == common else a[j]
            along = float(np.dot(end_i - pivot, end_j - pivot))
            off = abs(float(line_distance(pivot, end_i, end_j)))
            if along > 0 and off <= tau:
                violations.append(EdgePair(edges[i], edges[j], SegmentRelation.OVERLAP))

        i_idx, j_idx = first[~shared], second[~shared]
        if len(i_idx) == 0:
            return tuple(violations), ()
        distance = segment_distance(a[i_idx], b[i_idx], a[j_idx], b[j_idx])
        exact = segments_intersect_exact(a[i_idx], b[i_idx], a[j_idx], b[j_idx])
        for k in np.nonzero((distance <= tau) | exact)[0]:
            i, j = int(i_idx[k]), int(j_idx[k])
            relation = self._relation(a[i], b[i], a[j], b[j], float(distance[k]), bool(exact[k]), tau)
            pair = EdgePair(edges[i], edges[j], relation)
            if relation is SegmentRelation.SUSPECT:
                suspects.append(pair)
            elif relation is not SegmentRelation.DISJOINT:
                violations.append(pair)
        return tuple(violations), tuple(suspects)

    @staticmethod
    def _relation(
        a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray, distance: float, exact: bool, tau: float
    ) -> SegmentRelation:
        if distance > tau:
            return SegmentRelation.SUSPECT if exact else SegmentRelation.DISJOINT
        signs = [int(orientation(p, q, r, tau)) for p, q, r in ((a, b, c), (a, b, d), (c, d, a), (c, d, b))]
        if signs[0] * signs[1] < 0 and signs[2] * signs[3] < 0:
            return SegmentRelation.CROSSING
        if not any(signs) and collinear_overlap(a, b, c, d) > tau:
            return SegmentRelation.OVERLAP
        return SegmentRelation.TOUCHING if exact else SegmentRelation.SUSPECT

    @staticmethod
    def _vertices_on_edges(
        order: tuple[str, ...], points: np.ndarray, edges: list[Edge], a: np.ndarray, b: np.ndarray, tau: float
    ) -> tuple[tuple[str, Edge], ...]:
        if not edges:
            return ()
        to_segment = point_segment_distance(points[:, None, :], a[None, :, :], b[None, :, :])
        to_start = np.hypot(*(points[:, None, :] - a[None, :, :]).transpose(2, 0, 1))
        to_end = np.hypot(*(points[:, None, :] - b[None, :, :]).transpose(2, 0, 1))
        hits = (to_segment <= tau) & (to_start > tau) & (to_end > tau)
        found = []
        for vi, ei in zip(*np.nonzero(hits), strict=True):
            if order[vi] not in edges[ei]:
                found.append((order[vi], edges[ei]))
        return tuple(sorted(found))

    def classify_face_image(self, face: Face, coords: Mapping[str, Point], scale: float | None = None) -> FaceImage:
        """
        Classify the image of a bounded face as a point, a segment, a convex polygon or something else.

        Consecutive coincident corners and corners where the boundary runs straight on are distilled away
        first. A corner turning against the polygon's orientation, or doubling back, is reflex.

        Args:
            face: A bounded face.
            coords: A point for every boundary vertex.
            scale: Length scale for the tolerance; defaults to the diameter of all points.

        Returns:
            FaceImage: Kind, distilled corners and reflex corners.

        """
        if scale is None:
            scale = diameter(np.array(list(coords.values()), dtype=float)) or 1.0
        tau = self.config.tolerance * scale
        names = list(face.vertices)
        pts = np.array([coords[v] for v in names], dtype=float).reshape(-1, 2)
        if len(pts) == 0 or np.hypot(*(pts - pts[0]).T).max() <= tau:
            return FaceImage(face.id, FaceKind.POINT)

        corners = _distill(names, pts, tau)
        corner_pts = np.array([coords[v] for v in corners], dtype=float).reshape(-1, 2)
        far = corner_pts[np.argmax(np.hypot(*(corner_pts - corner_pts[0]).T))]
        if np.abs(line_distance(corner_pts[0], far, pts)).max() <= tau:
            return FaceImage(face.id, FaceKind.SEGMENT, tuple(corners))

        turns = turning_angles(corner_pts)
        direction = 1.0 if signed_area(corner_pts) >= 0 else -1.0
        # a corner doubling back turns by pi in either direction and is reflex for both orientations
        reflex = tuple(
            v for v, turn in zip(corners, turns, strict=True) if turn * direction <= 0 or abs(turn) >= np.pi - 1e-9
        )
        kind = FaceKind.OTHER
        if not reflex and len(corners) >= 3 and is_full_turn(float(turns.sum())):
            kind = FaceKind.CONVEX_POLYGON
        if reflex:
            self.logger.debug(f"Face {face.id} has reflex corners {list(reflex)}")
        return FaceImage(face.id, kind, tuple(corners), reflex)

    def covering_number_check(
        self, g: PlaneGraph, coords: Mapping[str, Point], samples: int | None = None, seed: int | None = None
    ) -> list[CoveringViolation]:
        """
        Count, for random points inside the boundary polygon, how many bounded face images contain them.

        Samples landing within tolerance of an edge image are redrawn, up to the retry budget per sample.

        Args:
            g: The plane graph; its map must be free of crossings.
            coords: A point for every vertex.
            samples: Number of sample points; defaults to the configured count.
            seed: Seed for ``numpy.random.default_rng``; defaults to the configured seed.

        Returns:
            list[CoveringViolation]: Sample points covered by a number of faces other than one.

        Raises:
            SampleOnEdge: A sample kept landing on an edge image.
            ValidationError: The boundary polygon has no area.

        """
        n_samples = self.config.covering_samples if samples is None else samples
        rng = np.random.default_rng(self.config.seed if seed is None else seed)
        scale = self.scale(g, coords)
        tau = self.config.tolerance * scale
        boundary = np.array([coords[v] for v in g.outer_cycle], dtype=float).reshape(-1, 2)
        if abs(signed_area(boundary)) <= tau * scale:
            raise ValidationError("boundary polygon image has no area")
        edges = g.sorted_edges
        a = np.array([coords[u] for u, _ in edges], dtype=float).reshape(-1, 2)
        b = np.array([coords[v] for _, v in edges], dtype=float).reshape(-1, 2)
        accepted = self._draw_samples(rng, boundary, a, b, n_samples, tau)
        counts = np.zeros(n_samples, dtype=int)
        for face in g.bounded_faces:
            polygon = np.array([coords[v] for v in face.vertices], dtype=float).reshape(-1, 2)
            counts += crossing_number(accepted, polygon)
        violations = [
            CoveringViolation((float(x), float(y)), int(count))
            for (x, y), count in zip(accepted, counts, strict=True)
            if count != 1
        ]
        self.logger.info(f"Covering check over {n_samples} samples: {len(violations)} violations")
        return violations

    def _draw_samples(
        self, rng: np.random.Generator, boundary: np.ndarray, a: np.ndarray, b: np.ndarray, n_samples: int, tau: float
    ) -> np.ndarray:
        low, high = boundary.min(axis=0), boundary.max(axis=0)
        accepted: list[np.ndarray] = []
        attempts = 0
        while len(accepted) < n_samples:
            wanted = n_samples - len(accepted)
            candidates = rng.uniform(low, high, size=(4 * wanted + 16, 2))
            candidates = candidates[crossing_number(candidates, boundary)]
            if len(candidates) == 0:
                continue
            on_edge = point_segment_distance(candidates[:, None, :], a[None, :, :], b[None, :, :]).min(axis=1) <= tau
            for point, hit in zip(candidates, on_edge, strict=True):
                if len(accepted) == n_samples:
                    break
                if not hit:
                    accepted.append(point)
                    attempts = 0
                    continue
                attempts += 1
                if attempts >= self.config.sample_retry_budget:
                    raise SampleOnEdge(f"sample {len(accepted)} landed on an edge image {attempts} times")
        return np.array(accepted, dtype=float).reshape(-1, 2)

    def orientation_check(self, g: PlaneGraph, coords: Mapping[str, Point]) -> bool:
        """
        Whether every bounded face image and the outer boundary polygon are counterclockwise.

        Raises:
            DegenerateFace: Some face image has (near) zero signed area.
            ValidationError: Some face boundary is not a simple cycle.

        """
        scale = self.scale(g, coords)
        tau = self.config.tolerance * scale
        preserved = True
        for face in g.faces_in_report_order():
            if not face_boundary_is_simple_cycle(face):
                raise ValidationError(f"face {face.id} boundary is not a simple cycle")
            vertices = g.outer_cycle if face.is_outer else face.vertices
            area = signed_area(np.array([coords[v] for v in vertices], dtype=float))
            if abs(area) <= tau * scale:
                raise DegenerateFace(face.id, area)
            if area < 0:
                preserved = False
        return preserved


def _distill(names: list[str], pts: np.ndarray, tau: float) -> list[str]:
    corners = list(zip(names, [tuple(p) for p in pts], strict=True))
    changed = True
    while changed and len(corners) > 2:
        changed = False
        for k in range(len(corners)):
            prev, here, nxt = corners[k - 1][1], corners[k][1], corners[(k + 1) % len(corners)][1]
            p, h, n = np.array(prev), np.array(here), np.array(nxt)
            if np.hypot(*(h - p)) <= tau:
                del corners[k]
                changed = True
                break
            straight = np.dot(h - p, n - h) > 0 and abs(float(line_distance(p, n, h))) <= tau
            if straight:
                del corners[k]
                changed = True
                break
    return [name for name, _ in corners]


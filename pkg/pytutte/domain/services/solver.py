"""Convex combination maps: weights, placements, the linear system and the perturbed maps."""

import math
from collections.abc import Iterable, Mapping, Sequence
from typing import TYPE_CHECKING

import numpy as np

from pytutte.config import Config
from pytutte.domain.errors import (
    CycleTooShort,
    InvalidPerturbation,
    InvalidPlacement,
    OuterNotSimpleCycle,
    PlacementMismatch,
    SingularSystem,
    SolverError,
)
from pytutte.domain.models.embedding import (
    BoundaryPlacement,
    EmbeddingResult,
    LinearSystem,
    PerturbationParams,
    Point,
    SweepRow,
    TriangulationResult,
    WeightScheme,
)
from pytutte.domain.models.plane_graph import PlaneGraph, face_boundary_is_simple_cycle, is_connected, same_cycle
from pytutte.domain.services.triangulation import neighbour_deltas
from pytutte.utils.class_logger import LoggerMixin
from pytutte.utils.geometry import diameter, line_distance, total_turning

if TYPE_CHECKING:
    from pytutte.domain.services.validator import EmbeddingValidator


class ConvexCombinationSolver(LoggerMixin):
    """Builds and solves the linear system of a convex combination map."""

    def __init__(self, config: Config | None = None) -> None:
        """
        Initialise the solver.

        Args:
            config (Config, optional): Supplies the residual, weight and geometric tolerances.

        """
        self.config = config or Config()

    # weights

    def barycentric_weights(self, g: PlaneGraph) -> WeightScheme:
        """
        Uniform weights ``1 / deg(u)`` on every internal vertex, identity rows on the boundary.

        Raises:
            OuterNotSimpleCycle: The outer boundary is not a simple cycle.

        """
        self._require_solvable(g)
        coefficients = {(v, v): 1.0 for v in g.external_vertices}
        for u in g.internal_vertices:
            neighbours = g.neighbours(u)
            for v in neighbours:
                coefficients[(u, v)] = 1.0 / len(neighbours)
        return WeightScheme(coefficients)

    def random_weight_scheme(self, g: PlaneGraph, seed: int) -> WeightScheme:
        """
        Strictly positive random weights, normalised per internal vertex and reproducible per seed.

        Raw weights are drawn uniformly from ``[0.1, 1)`` in sorted vertex and neighbour order.
        """
        self._require_solvable(g)
        rng = np.random.default_rng(seed)
        coefficients = {(v, v): 1.0 for v in g.external_vertices}
        for u in g.internal_vertices:
            neighbours = sorted(g.neighbours(u))
            raw = rng.uniform(0.1, 1.0, len(neighbours))
            raw /= raw.sum()
            for v, weight in zip(neighbours, raw, strict=True):
                coefficients[(u, v)] = float(weight)
        return WeightScheme(coefficients)

    def weight_scheme_from_mapping(self, g: PlaneGraph, mapping: Mapping[str, Mapping[str, float]]) -> WeightScheme:
        """
        Weight scheme from nested ``{u: {v: weight}}`` rows; missing external rows become identity rows.

        Raises:
            InvalidWeights: The rows violate the convex combination invariants.

        """
        rows = {u: dict(row) for u, row in mapping.items()}
        for v in g.external_vertices:
            rows.setdefault(v, {v: 1.0})
        scheme = WeightScheme.from_rows(rows)
        scheme.validate(g, require_positive=True, tolerance=self.config.weight_tolerance)
        return scheme

    # placements

    def regular_polygon_placement(self, outer_cycle: Sequence[str], radius: float | None = None) -> BoundaryPlacement:
        """
        Place the cycle counterclockwise at angles ``2 pi k / n`` on a circle.

        Raises:
            CycleTooShort: Fewer than three vertices.

        """
        n = len(outer_cycle)
        if n < 3:
            raise CycleTooShort(f"a boundary polygon needs at least 3 corners, got {n}")
        r = self.config.radius if radius is None else radius
        points = [(r * math.cos(2 * math.pi * k / n), r * math.sin(2 * math.pi * k / n)) for k in range(n)]
        return BoundaryPlacement(tuple(outer_cycle), tuple(points))

    def placement_from_coords(self, g: PlaneGraph, coords: Mapping[str, Point]) -> BoundaryPlacement:
        """
        Boundary placement taken from a coordinate mapping, ordered along the outer cycle.

        Raises:
            PlacementMismatch: A boundary vertex has no coordinate.

        """
        missing = [v for v in g.outer_cycle if v not in coords]
        if missing:
            raise PlacementMismatch(f"placement does not cover vertex '{missing[0]}'")
        return self.check_placement(g, BoundaryPlacement(g.outer_cycle, tuple(coords[v] for v in g.outer_cycle)))

    def check_placement(self, g: PlaneGraph, p: BoundaryPlacement) -> BoundaryPlacement:
        """
        Verify that a placement maps the outer cycle onto a counterclockwise convex polygon.

        Corners collinear with their neighbours are accepted; they are recorded in ``collinear_corners`` and
        logged as a warning.

        Returns:
            BoundaryPlacement: The placement, with its collinear corners filled in.

        Raises:
            PlacementMismatch: Wrong vertex set or cyclic order.
            CycleTooShort: Fewer than three corners.
            InvalidPlacement: The polygon is not convex, not counterclockwise, or has coincident corners.

        """
        if len(p.vertices) < 3:
            raise CycleTooShort(f"a boundary polygon needs at least 3 corners, got {len(p.vertices)}")
        if set(p.vertices) != set(g.outer_cycle):
            extra = sorted(set(p.vertices) ^ set(g.outer_cycle))
            raise PlacementMismatch(f"placement does not cover the outer cycle exactly (vertex '{extra[0]}')")
        if not same_cycle(p.vertices, g.outer_cycle):
            raise PlacementMismatch(f"placement order {list(p.vertices)} differs from the outer cycle {list(g.outer_cycle)}")
        points = p.as_array()
        tau = self.config.tolerance * max(diameter(points), 1e-300)
        n = len(points)
        collinear = []
        for k in range(n):
            prev, here, nxt = points[k - 1], points[k], points[(k + 1) % n]
            if np.hypot(*(here - prev)) <= tau:
                raise InvalidPlacement(f"corners '{p.vertices[k - 1]}' and '{p.vertices[k]}' coincide")
            turn = float(line_distance(prev, nxt, here))
            if turn > tau:
                raise InvalidPlacement(f"corner '{p.vertices[k]}' is reflex or the polygon is clockwise")
            if turn >= -tau:
                collinear.append(p.vertices[k])
        if not math.isclose(total_turning(points), 2 * math.pi, abs_tol=1e-6):
            raise InvalidPlacement("boundary polygon is not a simple counterclockwise convex polygon")
        if collinear:
            self.logger.warning(f"Boundary placement has collinear corners {collinear}")
        return BoundaryPlacement(p.vertices, p.points, tuple(collinear))

    # the linear system

    def assemble_system(self, g: PlaneGraph, w: WeightScheme, p: BoundaryPlacement) -> LinearSystem:
        """
        Assemble ``A``, ``B_x`` and ``B_y`` with the boundary rows first in placement order.

        Internal vertices follow in sorted order; their rows carry ``1`` on the diagonal and ``-lambda[u, v]``
        off it.

        Raises:
            PlacementMismatch: The placement does not list the outer cycle in order.

        """
        if not same_cycle(p.vertices, g.outer_cycle):
            raise PlacementMismatch(f"placement order {list(p.vertices)} differs from the outer cycle {list(g.outer_cycle)}")
        index = tuple(p.vertices) + tuple(g.internal_vertices)
        position = {v: i for i, v in enumerate(index)}
        m, n = len(index), len(p.vertices)
        a = np.eye(m)
        for u in g.internal_vertices:
            i = position[u]
            for v, weight in w.row(u).items():
                a[i, position[v]] -= weight
        bx = np.zeros(m)
        by = np.zeros(m)
        corners = p.as_array()
        bx[:n], by[:n] = corners[:, 0], corners[:, 1]
        return LinearSystem(index=index, n_boundary=n, a=a, bx=bx, by=by)

    def solve(self, sys: LinearSystem) -> tuple[np.ndarray, np.ndarray]:
        """
        Solve both right hand sides by LU factorisation with partial pivoting.

        Raises:
            SingularSystem: The matrix is singular or the residual exceeds its bound.

        """
        try:
            solution = np.linalg.solve(sys.a, sys.b)
        except np.linalg.LinAlgError as e:
            raise SingularSystem(f"convex combination matrix of size {sys.size} is singular: {e}") from e
        residual = self.residual(sys, solution[:, 0], solution[:, 1])
        bound = self.config.residual_tolerance * max(float(np.abs(sys.b).max(initial=0.0)), 1.0)
        if not np.all(np.isfinite(solution)) or residual > bound:
            raise SingularSystem(f"solution residual {residual:.3e} exceeds bound {bound:.3e}; is the graph connected?")
        return solution[:, 0], solution[:, 1]

    @staticmethod
    def residual(sys: LinearSystem, x: np.ndarray, y: np.ndarray) -> float:
        """Max-norm of ``A X - B_x`` and ``A Y - B_y``."""
        return float(max(np.abs(sys.a @ x - sys.bx).max(initial=0.0), np.abs(sys.a @ y - sys.by).max(initial=0.0)))

    # maps

    def convex_combination_map(self, g: PlaneGraph, w: WeightScheme, p: BoundaryPlacement) -> EmbeddingResult:
        """
        The unique convex combination map fixing the boundary on ``p``.

        Boundary vertices are mapped exactly onto their placement points.

        Args:
            g: A connected plane graph whose outer boundary is a simple cycle.
            w: Weights valid for ``g``.
            p: A convex counterclockwise placement of the outer cycle.

        Returns:
            EmbeddingResult: Coordinates of every vertex.

        """
        return self._solve_map(g, w, p, require_positive=True, delta=None)

    def perturbed_map(
        self, g: PlaneGraph, w: WeightScheme, p: BoundaryPlacement, params: PerturbationParams
    ) -> EmbeddingResult:
        """
        The perturbed map: a convex combination map of the triangulation with damped original weights.

        For an internal vertex ``u`` that gains neighbours, original weights become ``(1 - delta) lambda[u, v]``
        and every added neighbour receives ``delta / |added|``. Rows of vertices that gain nothing are kept.
        With ``delta = 0`` the system is identical to the one of ``g``.

        Args:
            g: The original graph.
            w: Weights valid for ``g``.
            p: Boundary placement.
            params: ``delta`` and the triangulation of ``g``.

        Returns:
            EmbeddingResult: Coordinates of every vertex, solved on the triangulated graph.

        Raises:
            InvalidPerturbation: The triangulation does not belong to ``g``.

        """
        g_tri = params.triangulation.graph
        if set(g_tri.vertex_ids) != set(g.vertex_ids) or not g.edges <= g_tri.edges or g_tri.outer_cycle != g.outer_cycle:
            raise InvalidPerturbation("triangulation does not extend the graph with the same outer boundary")
        self._require_solvable(g)
        w.validate(g, require_positive=True, tolerance=self.config.weight_tolerance)
        delta = params.delta
        coefficients = {(v, v): 1.0 for v in g.external_vertices}
        for u, neighbourhood in neighbour_deltas(g, g_tri).items():
            row = w.row(u)
            added = neighbourhood.added
            if not added:
                for v, weight in row.items():
                    coefficients[(u, v)] = weight
                continue
            for v, weight in row.items():
                coefficients[(u, v)] = (1.0 - delta) * weight
            for v in added:
                coefficients[(u, v)] = delta / len(added)
        scheme = WeightScheme(coefficients)
        return self._solve_map(g_tri, scheme, p, require_positive=delta > 0, delta=delta)

    def sweep(
        self,
        g: PlaneGraph,
        w: WeightScheme,
        p: BoundaryPlacement,
        deltas: Iterable[float],
        triangulation: TriangulationResult,
        validator: "EmbeddingValidator",
    ) -> list[SweepRow]:
        """
        Distance of each perturbed map from the unperturbed one.

        Args:
            g: The original graph.
            w: Weights valid for ``g``.
            p: Boundary placement.
            deltas: Perturbation parameters, each in ``[0, 1)``.
            triangulation: Triangulation of ``g``.
            validator: Decides whether each perturbed map embeds the triangulated graph.

        Returns:
            list[SweepRow]: ``max_v |f(v) - f_delta(v)|`` and the embedding verdict per delta, in input order.

        """
        base = self.convex_combination_map(g, w, p)
        order = g.vertex_ids
        reference = base.as_array(order)
        rows = []
        for delta in deltas:
            perturbed = self.perturbed_map(g, w, p, PerturbationParams(delta, triangulation))
            norm = float(np.linalg.norm(perturbed.as_array(order) - reference, axis=1).max(initial=0.0))
            report = validator.validate(triangulation.graph, perturbed.coords)
            self.logger.info(f"delta={delta:g}: norm={norm:.3e}, embedding={report.is_embedding}")
            rows.append(SweepRow(delta=delta, norm=norm, is_embedding=report.is_embedding))
        return rows

    def hull_containment_violation(self, result: EmbeddingResult) -> float:
        """How far any vertex lies outside the boundary polygon; zero when all coordinates are inside."""
        corners = result.placement.as_array()
        points = np.array(list(result.coords.values()), dtype=float).reshape(-1, 2)
        following = np.roll(corners, -1, axis=0)
        # positive distance is to the left of a counterclockwise edge, i.e. inside
        distances = line_distance(corners[None, :, :], following[None, :, :], points[:, None, :])
        return float(max(0.0, -distances.min(initial=0.0)))

    def _solve_map(
        self, g: PlaneGraph, w: WeightScheme, p: BoundaryPlacement, require_positive: bool, delta: float | None
    ) -> EmbeddingResult:
        self._require_solvable(g)
        placement = self.check_placement(g, p)
        w.validate(g, require_positive=require_positive, tolerance=self.config.weight_tolerance)
        sys = self.assemble_system(g, w, placement)
        x, y = self.solve(sys)
        residual = self.residual(sys, x, y)
        coords = {v: (float(x[i]), float(y[i])) for i, v in enumerate(sys.index)}
        coords.update(placement.as_dict())
        self.logger.info(f"Solved {sys.size}x{sys.size} system, residual {residual:.3e}")
        return EmbeddingResult(
            coords={v: coords[v] for v in g.vertex_ids},
            scheme=w,
            placement=placement,
            residual=residual,
            solved_on=g,
            delta=delta,
        )

    def _require_solvable(self, g: PlaneGraph) -> None:
        if not face_boundary_is_simple_cycle(g.outer):
            raise OuterNotSimpleCycle(f"outer boundary {list(g.outer_cycle)} is not a simple cycle")
        if not is_connected(g):
            raise SolverError("convex combination maps need a connected graph")

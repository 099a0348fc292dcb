"""Convex combination maps: weights, boundary placements, linear systems and results."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from pytutte.domain.errors import InvalidPerturbation, InvalidWeights
from pytutte.domain.models.plane_graph import Edge, PlaneGraph

Point = tuple[float, float]


@dataclass(frozen=True)
class WeightScheme:
    """
    Coefficients ``lambda[u, v]`` of a convex combination map, stored sparsely (nonzero entries only).

    External vertices carry the identity row ``lambda[v, v] = 1``.
    """

    coefficients: Mapping[tuple[str, str], float]

    def __post_init__(self) -> None:
        """Drop explicit zeros and freeze the mapping."""
        sparse = {key: float(value) for key, value in self.coefficients.items() if value != 0}
        object.__setattr__(self, "coefficients", MappingProxyType(sparse))

    @classmethod
    def from_rows(cls, rows: Mapping[str, Mapping[str, float]]) -> "WeightScheme":
        """Build a scheme from nested ``{u: {v: weight}}`` rows."""
        return cls({(u, v): weight for u, row in rows.items() for v, weight in row.items()})

    def row(self, u: str) -> dict[str, float]:
        """Nonzero coefficients of vertex ``u``."""
        return {v: weight for (w, v), weight in self.coefficients.items() if w == u}

    def rows(self) -> dict[str, dict[str, float]]:
        """All rows, keyed by vertex, each sorted by neighbour."""
        rows: dict[str, dict[str, float]] = {}
        for (u, v), weight in sorted(self.coefficients.items()):
            rows.setdefault(u, {})[v] = weight
        return rows

    def weight(self, u: str, v: str) -> float:
        """Coefficient ``lambda[u, v]``; zero when not stored."""
        return self.coefficients.get((u, v), 0.0)

    def validate(self, g: PlaneGraph, require_positive: bool = True, tolerance: float = 1e-12) -> None:
        """
        Check the convex combination invariants against a graph.

        Args:
            g: The graph the scheme belongs to.
            require_positive: Demand strictly positive weights on every edge at an internal vertex.
            tolerance: Allowed deviation of each row sum from one.

        Raises:
            InvalidWeights: Naming the first offending vertex or pair.

        """
        known = set(g.vertex_ids)
        external = g.external_vertices
        rows = self.rows()
        for u in rows:
            if u not in known:
                raise InvalidWeights(f"weights given for unknown vertex '{u}'")
        for u in g.vertex_ids:
            row = rows.get(u, {})
            for v, weight in row.items():
                if v not in known:
                    raise InvalidWeights(f"weight ({u}, {v}) refers to unknown vertex '{v}'")
                if weight < 0:
                    raise InvalidWeights(f"weight ({u}, {v}) = {weight} is negative")
            if u in external:
                if row != {u: 1.0}:
                    raise InvalidWeights(f"external vertex '{u}' must have the identity row, got {row}")
                continue
            if u in row:
                raise InvalidWeights(f"internal vertex '{u}' has a nonzero self weight")
            neighbours = set(g.neighbours(u))
            for v in row:
                if v not in neighbours:
                    raise InvalidWeights(f"weight ({u}, {v}) is nonzero but '{v}' is not a neighbour of '{u}'")
            if require_positive:
                for v in sorted(neighbours - set(row)):
                    raise InvalidWeights(f"weight ({u}, {v}) must be positive for internal vertex '{u}'")
            total = sum(row.values())
            if abs(total - 1.0) > tolerance:
                raise InvalidWeights(f"weights of internal vertex '{u}' sum to {total!r}, not 1")


@dataclass(frozen=True)
class BoundaryPlacement:
    """The outer cycle's vertices, counterclockwise, mapped to the corners of a convex polygon."""

    vertices: tuple[str, ...]
    points: tuple[Point, ...]
    collinear_corners: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        """Normalise point tuples."""
        object.__setattr__(self, "points", tuple((float(x), float(y)) for x, y in self.points))
        if len(self.points) != len(self.vertices):
            raise ValueError("BoundaryPlacement needs exactly one point per vertex")

    def as_array(self) -> np.ndarray:
        """Corner coordinates as an ``(n, 2)`` array."""
        return np.array(self.points, dtype=float).reshape(-1, 2)

    def as_dict(self) -> dict[str, Point]:
        """Corner coordinates keyed by vertex."""
        return dict(zip(self.vertices, self.points, strict=True))


@dataclass(frozen=True)
class LinearSystem:
    """
    ``A X = B_x`` and ``A Y = B_y`` for a convex combination map.

    Rows ``0 .. n_boundary-1`` are the boundary vertices (identity rows); the remaining rows are
    ``x_u - sum_v lambda[u, v] x_v = 0``.
    """

    index: tuple[str, ...]
    n_boundary: int
    a: np.ndarray
    bx: np.ndarray
    by: np.ndarray

    @property
    def size(self) -> int:
        """Number of unknowns."""
        return len(self.index)

    @property
    def b(self) -> np.ndarray:
        """Right hand sides stacked as an ``(m, 2)`` array."""
        return np.column_stack([self.bx, self.by])


@dataclass(frozen=True)
class NeighbourDelta:
    """Neighbours of an internal vertex before and after triangulation."""

    original: frozenset[str]
    triangulated: frozenset[str]

    @property
    def added(self) -> frozenset[str]:
        """Neighbours gained through added edges."""
        return self.triangulated - self.original


@dataclass(frozen=True)
class TriangulationResult:
    """A triangulated supergraph ``G'`` with the same vertices and outer boundary as ``G``."""

    graph: PlaneGraph
    added_edges: tuple[Edge, ...]
    face_map: Mapping[int, tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class PerturbationParams:
    """The damping parameter of the perturbed map together with the triangulation it spreads weight over."""

    delta: float
    triangulation: TriangulationResult

    def __post_init__(self) -> None:
        """Reject ``delta`` outside ``[0, 1)``."""
        if not 0.0 <= self.delta < 1.0:
            raise InvalidPerturbation(f"delta must lie in [0, 1), got {self.delta}")


@dataclass(frozen=True)
class EmbeddingResult:
    """Vertex coordinates of a convex combination map plus solve metadata."""

    coords: Mapping[str, Point]
    scheme: WeightScheme
    placement: BoundaryPlacement
    residual: float
    solved_on: PlaneGraph
    delta: float | None = None

    def as_array(self, order: tuple[str, ...]) -> np.ndarray:
        """Coordinates as an array in the given vertex order."""
        return np.array([self.coords[v] for v in order], dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class SweepRow:
    """One line of a convergence sweep of the perturbed maps."""

    delta: float
    norm: float
    is_embedding: bool

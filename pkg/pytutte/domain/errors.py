"""Exception hierarchy for pytutte.

Every error names the module it came from through ``provenance`` so the command line can report where a
failure originated.
"""


class PyTutteError(ValueError):
    """Base class for all toolkit errors."""

    provenance = "pytutte"
    # set on errors that valid input cannot trigger; the command line exits with 3 for them
    internal = False


# plane_graph


class PlaneGraphError(PyTutteError):
    """Invalid combinatorial plane graph or graph transformation."""

    provenance = "plane_graph"


class EmptyGraph(PlaneGraphError):
    """The vertex set is empty."""


class UnknownVertex(PlaneGraphError):
    """A rotation list mentions a vertex that is not declared."""

    def __init__(self, vertex: str, context: str) -> None:
        """Record the unknown vertex and where it was referenced."""
        super().__init__(f"unknown vertex '{vertex}' referenced by {context}")
        self.vertex = vertex


class SelfLoop(PlaneGraphError):
    """A vertex lists itself as a neighbour."""

    def __init__(self, vertex: str) -> None:
        """Record the looping vertex."""
        super().__init__(f"self-loop at vertex '{vertex}'")
        self.vertex = vertex


class DuplicateEdge(PlaneGraphError):
    """A neighbour appears twice in one rotation list."""

    def __init__(self, u: str, v: str) -> None:
        """Record the repeated edge."""
        super().__init__(f"edge ('{u}', '{v}') appears more than once in the rotation of '{u}'")
        self.edge = (u, v)


class AsymmetricRotation(PlaneGraphError):
    """``v`` appears in ``rotation(u)`` but ``u`` is missing from ``rotation(v)``."""

    def __init__(self, u: str, v: str) -> None:
        """Record the one-sided adjacency."""
        super().__init__(f"vertex '{v}' lists '{u}' as a neighbour but '{u}' does not list '{v}'")
        self.vertex = u
        self.edge = (u, v)


class NonPlanarRotation(PlaneGraphError):
    """The rotation system traces faces that violate Euler's formula for some component."""

    def __init__(self, vertex: str, expected: int, traced: int) -> None:
        """Record a representative vertex of the offending component."""
        super().__init__(
            f"rotation system of the component containing '{vertex}' is not planar: "
            f"traced {traced} faces, Euler's formula requires {expected}"
        )
        self.vertex = vertex


class OuterFaceNotFound(PlaneGraphError):
    """The requested outer face matches no traced face."""


class FaceNotBounded(PlaneGraphError):
    """An operation that needs a bounded face was given the outer face."""


class FacesNotAdjacent(PlaneGraphError):
    """Two faces do not share a boundary edge."""


class IntersectionDisconnected(PlaneGraphError):
    """Two face boundaries meet in a disconnected set."""


class MergeImpossible(PlaneGraphError):
    """No sequence of admissible merges reaches a single bounded face."""


# connectivity_analysis


class AnalysisError(PyTutteError):
    """Structural analysis precondition failure."""

    provenance = "connectivity_analysis"


class NotBiconnected(AnalysisError):
    """The graph is not biconnected."""


class FacesNotSimple(AnalysisError):
    """Some face boundary is not a simple cycle."""


class NotTriangulated(AnalysisError):
    """Some bounded face has more than three boundary edges."""


class InstanceTooLarge(AnalysisError):
    """The exhaustive oracle was asked to run above its vertex cap."""


# triangulate


class TriangulationError(PyTutteError):
    """A bounded face could not be split by any diagonal."""

    provenance = "triangulate"
    internal = True


# solver


class SolverError(PyTutteError):
    """Convex combination system could not be built or solved."""

    provenance = "solver"


class OuterNotSimpleCycle(SolverError):
    """The outer face boundary is not a simple cycle."""


class PlacementMismatch(SolverError):
    """The boundary placement does not match the outer cycle."""


class InvalidPlacement(SolverError):
    """The boundary placement is not a counterclockwise convex polygon."""


class InvalidWeights(SolverError):
    """A weight scheme violates the convex combination invariants."""


class CycleTooShort(SolverError):
    """A polygon needs at least three corners."""


class InvalidPerturbation(SolverError):
    """The perturbation parameter lies outside ``[0, 1)`` or the triangulation does not fit the graph."""


class SingularSystem(SolverError):
    """The linear system is singular or the solution misses the residual bound."""

    internal = True


# validator


class ValidationError(PyTutteError):
    """Geometric validation precondition failure."""

    provenance = "validator"


class MissingCoordinate(ValidationError):
    """A vertex has no coordinate."""

    def __init__(self, vertex: str) -> None:
        """Record the vertex without a coordinate."""
        super().__init__(f"no coordinate for vertex '{vertex}'")
        self.vertex = vertex


class SampleOnEdge(ValidationError):
    """A covering-number sample kept landing on an edge image."""

    internal = True


class DegenerateFace(ValidationError):
    """A face image has (near) zero signed area."""

    def __init__(self, face_id: int, area: float) -> None:
        """Record the degenerate face."""
        super().__init__(f"face {face_id} has degenerate image (signed area {area:.3e})")
        self.face_id = face_id


# cli


class ParseError(PyTutteError):
    """Malformed input file."""

    provenance = "cli"

    def __init__(self, message: str, source: str = "<input>", line: int | None = None, field: str | None = None) -> None:
        """Record where in the input the problem was found."""
        location = source
        if line is not None:
            location += f":{line}"
        if field is not None:
            location += f" [{field}]"
        super().__init__(f"{location}: {message}")
        self.source = source
        self.line = line
        self.field = field

"""Corpus tests tying the combinatorial criteria to the geometry of convex combination maps."""

import pytest

from pytutte.domain.models.embedding import BoundaryPlacement
from pytutte.domain.models.plane_graph import (
    PlaneGraph,
    euler_check,
    is_biconnected,
    is_triangulated,
    same_cycle,
)
from pytutte.domain.models.validation import FaceKind
from pytutte.domain.services.connectivity_analysis import ConnectivityAnalyzer
from pytutte.domain.services.face_merge import FaceMerger
from pytutte.domain.services.solver import ConvexCombinationSolver
from pytutte.domain.services.triangulation import Triangulator
from pytutte.domain.services.validator import EmbeddingValidator
from pytutte.utils import instances

pytestmark = [pytest.mark.slow, pytest.mark.integration]

CORPUS_SEEDS = range(200)
HAND_BUILT = ("square_with_diagonal", "collapse", "theta", "split_hexagon", "triangle_with_centre", "k4", "octahedron")


def biconnected_corpus() -> list[PlaneGraph]:
    """Random biconnected graphs with at most ten vertices plus the hand-built instances."""
    corpus = [instances.random_biconnected(10, seed) for seed in CORPUS_SEEDS]
    return corpus + [instances.named_graph(name) for name in HAND_BUILT]


def triangulation_sizes(seed: int) -> tuple[int, int]:
    """Boundary and internal vertex counts between 10 and 30 vertices in total."""
    return 4 + seed % 6, 6 + (7 * seed) % 16


GRID_SIZES = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (4, 4)]

# convex embeddable and not triangulated
CONVEX_EMBEDDABLE = {
    **{f"grid_{r}x{c}": instances.grid(r, c) for r, c in GRID_SIZES},
    **{f"prism_{n}": instances.prism(n) for n in range(3, 11)},
    "split_hexagon": instances.split_hexagon(),
}

# every triangulation adds an edge at some internal vertex, so the perturbed maps differ from the original
PERTURBABLE = {
    "collapse": instances.collapse_instance(),
    "theta": instances.theta_graph(),
    **{f"grid_{r}x{c}": instances.grid(r, c) for r, c in [(2, 2), (2, 3), (3, 3), (3, 4)]},
    **{f"prism_{n}": instances.prism(n) for n in range(3, 8)},
}

MERGEABLE = {
    "quadril": instances.square_with_diagonal(),
    "square_with_centre": instances.square_with_centre(),
    "split_hexagon": instances.split_hexagon(),
    **{f"grid_{r}x{c}": instances.grid(r, c) for r, c in [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4)]},
    **{f"prism_{n}": instances.prism(n) for n in range(4, 8)},
    **{f"wheel_{n}": instances.wheel(n) for n in range(4, 10)},
}


def test_criterion_agrees_with_exhaustive_search(analyzer: ConnectivityAnalyzer) -> None:
    """Test that the face-intersection criterion and the witness search agree on the whole corpus."""
    disagreements = []
    for g in biconnected_corpus():
        assert is_biconnected(g)
        assert euler_check(g)
        criterion = analyzer.is_nodally_3connected(g).holds
        witness = analyzer.find_witnesses_bruteforce(g)
        if criterion != (witness is None):
            disagreements.append((g.vertex_ids, criterion, witness))

    assert disagreements == []


@pytest.mark.parametrize("seed", range(50))
def test_triangulations_embed_under_random_weights(
    solver: ConvexCombinationSolver, validator: EmbeddingValidator, seed: int
) -> None:
    """Test that every convex combination map of a triangulated graph is an embedding with convex faces."""
    g = instances.random_triangulation(*triangulation_sizes(seed), seed)
    p = solver.check_placement(g, solver.regular_polygon_placement(g.outer_cycle))

    for weight_seed in range(5):
        result = solver.convex_combination_map(g, solver.random_weight_scheme(g, 1000 * seed + weight_seed), p)
        report = validator.validate(g, result.coords)
        assert report.is_embedding, (seed, weight_seed)
        assert all(image.kind is FaceKind.CONVEX_POLYGON for image in report.face_classifications.values())


def test_collapse_maps_inner_face_to_a_segment(
    analyzer: ConnectivityAnalyzer,
    solver: ConvexCombinationSolver,
    validator: EmbeddingValidator,
    collapse: PlaneGraph,
    unit_square: BoundaryPlacement,
) -> None:
    """Test the barycentric map of two squares sharing two opposite corners."""
    result = solver.convex_combination_map(collapse, solver.barycentric_weights(collapse), unit_square)
    report = validator.validate(collapse, result.coords)

    assert result.coords["u2"] == pytest.approx((0.5, 0.5), abs=1e-9)
    assert result.coords["u4"] == pytest.approx((0.5, 0.5), abs=1e-9)
    assert not report.is_embedding
    inner = next(f.id for f in collapse.bounded_faces if f.vertex_set == {"u2", "u4", "v1", "v3"})
    assert report.face_classifications[inner].kind is FaceKind.SEGMENT
    assert not analyzer.is_nodally_3connected(collapse)


@pytest.mark.parametrize("name", sorted(CONVEX_EMBEDDABLE))
def test_convex_embeddable_graphs_embed(
    analyzer: ConnectivityAnalyzer, solver: ConvexCombinationSolver, validator: EmbeddingValidator, name: str
) -> None:
    """Test that convex embeddable graphs are embedded and covered once under random weights."""
    g = CONVEX_EMBEDDABLE[name].graph()
    assert analyzer.is_convex_embeddable(g).convex_embeddable
    assert not is_triangulated(g)
    p = solver.check_placement(g, solver.regular_polygon_placement(g.outer_cycle))

    for weight_seed in range(10):
        result = solver.convex_combination_map(g, solver.random_weight_scheme(g, weight_seed), p)
        report = validator.validate(g, result.coords, samples=1000)
        assert report.is_embedding, (name, weight_seed)
        assert report.covering_number_violations == (), (name, weight_seed)


def test_theta_graph_never_embeds(
    analyzer: ConnectivityAnalyzer, solver: ConvexCombinationSolver, validator: EmbeddingValidator, theta: PlaneGraph
) -> None:
    """Test that a graph with an inverted subgraph has no convex combination embedding."""
    p = solver.regular_polygon_placement(theta.outer_cycle)

    for weight_seed in range(10):
        result = solver.convex_combination_map(theta, solver.random_weight_scheme(theta, weight_seed), p)
        assert not validator.validate(theta, result.coords).is_embedding
    assert len(analyzer.is_convex_embeddable(theta).inverted_subgraphs) == 1


@pytest.mark.parametrize("name", sorted(PERTURBABLE))
def test_perturbed_maps_converge(
    solver: ConvexCombinationSolver, triangulator: Triangulator, validator: EmbeddingValidator, name: str
) -> None:
    """Test that the perturbed maps approach the convex combination map and each embeds the triangulation."""
    g = PERTURBABLE[name].graph()
    w = solver.random_weight_scheme(g, 17)
    p = solver.regular_polygon_placement(g.outer_cycle)

    rows = solver.sweep(g, w, p, [1e-2, 1e-4, 1e-6], triangulator.triangulate(g), validator)

    norms = [row.norm for row in rows]
    assert norms[0] > norms[1] > norms[2]
    assert norms[2] < 1e-4 * validator.scale(g, solver.convex_combination_map(g, w, p).coords)
    assert all(row.is_embedding for row in rows)


@pytest.mark.parametrize("seed", range(100))
def test_triangulation_invariants(triangulator: Triangulator, seed: int) -> None:
    """Test that triangulation keeps every rotation as a subsequence and is idempotent."""
    g = instances.random_biconnected(10, seed)

    result = triangulator.triangulate(g)

    g_tri = result.graph
    assert is_triangulated(g_tri)
    assert euler_check(g_tri)
    assert same_cycle(g_tri.outer_cycle, g.outer_cycle)
    for v, neighbours in g.rotation.items():
        kept = [u for u in g_tri.rotation[v] if u in neighbours]
        assert same_cycle(kept, neighbours), v
    again = triangulator.triangulate(g_tri)
    assert again.added_edges == ()
    assert again.graph == g_tri


def test_chords_decide_nodal_connectivity_of_triangulations(
    analyzer: ConnectivityAnalyzer, triangulator: Triangulator
) -> None:
    """Test that a triangulated graph is nodally 3-connected exactly when no chord is flagged."""
    corpus = [instances.random_triangulation(*triangulation_sizes(seed), seed) for seed in range(30)]
    corpus += [triangulator.triangulate(instances.random_biconnected(10, seed)).graph for seed in range(100)]

    for g in corpus:
        assert (analyzer.chord_diagnostic(g) == []) == analyzer.is_nodally_3connected(g).holds


@pytest.mark.parametrize("name", sorted(MERGEABLE))
def test_merging_down_to_one_face(analyzer: ConnectivityAnalyzer, merger: FaceMerger, name: str) -> None:
    """Test that admissible merges keep the graph convex embeddable until one bounded face is left."""
    g = MERGEABLE[name].graph()

    graphs = merger.apply_merge_sequence(g, merger.plan_merge_sequence(g))

    for step in graphs:
        assert analyzer.is_convex_embeddable(step).convex_embeddable
        assert same_cycle(step.outer_cycle, g.outer_cycle)
    assert len(graphs[-1].bounded_faces) == 1

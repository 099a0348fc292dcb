"""
Pytest configuration for the plane graph embedding toolkit.

This module provides fixtures for the named instances of the catalogue and for services built from a default
configuration.

"""

import logging

import pytest

from pytutte.config import Config
from pytutte.domain.models.embedding import BoundaryPlacement
from pytutte.domain.models.plane_graph import PlaneGraph
from pytutte.domain.services.connectivity_analysis import ConnectivityAnalyzer
from pytutte.domain.services.face_merge import FaceMerger
from pytutte.domain.services.solver import ConvexCombinationSolver
from pytutte.domain.services.triangulation import Triangulator
from pytutte.domain.services.validator import EmbeddingValidator
from pytutte.utils import instances
from pytutte.utils.class_logger import configure_logging

configure_logging(level=logging.WARNING)


@pytest.fixture
def config() -> Config:
    """Default configuration."""
    return Config()


@pytest.fixture
def analyzer(config: Config) -> ConnectivityAnalyzer:
    """Create a connectivity analyzer for testing."""
    return ConnectivityAnalyzer(config)


@pytest.fixture
def merger(config: Config) -> FaceMerger:
    """Create a face merger for testing."""
    return FaceMerger(config)


@pytest.fixture
def triangulator(config: Config) -> Triangulator:
    """Create a triangulator for testing."""
    return Triangulator(config)


@pytest.fixture
def solver(config: Config) -> ConvexCombinationSolver:
    """Create a convex combination solver for testing."""
    return ConvexCombinationSolver(config)


@pytest.fixture
def validator(config: Config) -> EmbeddingValidator:
    """Create an embedding validator for testing."""
    return EmbeddingValidator(config)


@pytest.fixture
def quadril() -> PlaneGraph:
    """A square with one diagonal."""
    return instances.square_with_diagonal().graph()


@pytest.fixture
def theta() -> PlaneGraph:
    """The theta graph whose external edge is blocked by a bounded face."""
    return instances.theta_graph().graph()


@pytest.fixture
def collapse() -> PlaneGraph:
    """Two 4-cycles sharing two opposite vertices."""
    return instances.collapse_instance().graph()


@pytest.fixture
def triangle_with_centre() -> PlaneGraph:
    """A triangle with a centre vertex joined to its corners."""
    return instances.triangle_with_centre().graph()


@pytest.fixture
def unit_square(collapse: PlaneGraph) -> BoundaryPlacement:
    """The outer cycle of the collapse instance on the unit square."""
    corners = {"v1": (0.0, 0.0), "v2": (1.0, 0.0), "v3": (1.0, 1.0), "v4": (0.0, 1.0)}
    return BoundaryPlacement(collapse.outer_cycle, tuple(corners[v] for v in collapse.outer_cycle))

"""Service provider for the services of one command line run."""

import logging

from pytutte.config import Config
from pytutte.domain.services.connectivity_analysis import ConnectivityAnalyzer
from pytutte.domain.services.face_merge import FaceMerger
from pytutte.domain.services.solver import ConvexCombinationSolver
from pytutte.domain.services.triangulation import Triangulator
from pytutte.domain.services.validator import EmbeddingValidator


class ServiceProvider:
    """Provider for service instances sharing one configuration."""

    def __init__(self, config: Config | None = None) -> None:
        """
        Initialize service provider.

        Args:
            config (Config, optional): Configuration shared by every service. Defaults to ``Config()``.

        """
        self.config = config or Config()
        self.logger = logging.getLogger("pytutte.services.provider")
        self.logger.info("Initializing service provider")

        self.analyzer = ConnectivityAnalyzer(self.config)
        self.merger = FaceMerger(self.config)
        self.triangulator = Triangulator(self.config)
        self.solver = ConvexCombinationSolver(self.config)
        self.validator = EmbeddingValidator(self.config)

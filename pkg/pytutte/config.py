"""Configuration handling for pytutte."""

import logging
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    """Toolkit configuration shared by all services."""

    log_level: str = "warning"
    tolerance: float = 1e-9
    residual_tolerance: float = 1e-9
    weight_tolerance: float = 1e-12
    oracle_vertex_cap: int = 16
    radius: float = 1.0
    covering_samples: int = 1000
    sample_retry_budget: int = 8
    seed: int = 0
    log_file: str | None = None

    def __post_init__(self) -> None:
        """Reject tolerances and caps that cannot be meaningful."""
        if self.log_level.upper() not in logging.getLevelNamesMapping():
            raise ValueError(f"Config.log_level must name a logging level, got '{self.log_level}'")
        for name in ("tolerance", "residual_tolerance", "weight_tolerance", "radius"):
            if getattr(self, name) <= 0:
                raise ValueError(f"Config.{name} must be positive, got {getattr(self, name)}")
        if self.oracle_vertex_cap < 1:
            raise ValueError(f"Config.oracle_vertex_cap must be at least 1, got {self.oracle_vertex_cap}")
        if self.covering_samples < 0 or self.sample_retry_budget < 1:
            raise ValueError("Config.covering_samples must be >= 0 and Config.sample_retry_budget >= 1")


def get_config() -> Config:
    """Load configuration from environment variables."""
    return Config(
        log_level=os.getenv("PYTUTTE_LOG_LEVEL", "warning"),
        tolerance=float(os.getenv("PYTUTTE_TOLERANCE", "1e-9")),
        residual_tolerance=float(os.getenv("PYTUTTE_RESIDUAL_TOLERANCE", "1e-9")),
        weight_tolerance=float(os.getenv("PYTUTTE_WEIGHT_TOLERANCE", "1e-12")),
        oracle_vertex_cap=int(os.getenv("PYTUTTE_ORACLE_VERTEX_CAP", "16")),
        radius=float(os.getenv("PYTUTTE_RADIUS", "1.0")),
        covering_samples=int(os.getenv("PYTUTTE_COVERING_SAMPLES", "1000")),
        sample_retry_budget=int(os.getenv("PYTUTTE_SAMPLE_RETRY_BUDGET", "8")),
        seed=int(os.getenv("PYTUTTE_SEED", "0")),
        log_file=os.getenv("PYTUTTE_LOG_FILE") or None,
    )

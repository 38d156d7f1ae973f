"""
Application configuration using pydantic-settings.
All environment variables are loaded from .env file with sensible defaults.
"""

from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Toolkit settings with environment variable support."""

    # Application
    APP_NAME: str = "Partite Turan Density Toolkit"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    API_PREFIX: str = "/api/v1"
    LOG_LEVEL: str = "INFO"

    # CORS
    CORS_ORIGINS: list[str] = [
        "http://localhost:3000",
        "http://127.0.0.1:3000",
    ]

    # Redis report cache (deterministic scans only)
    REDIS_URL: str = "redis://localhost:6379/0"
    REDIS_ENABLED: bool = False  # Disable by default for easy local runs
    REPORT_CACHE_TTL: int = 86400

    # Parallelism: the only knob the CLI reads from the environment
    DEFAULT_JOBS: int = 1

    # Search oracle
    EXHAUSTIVE_BUDGET: int = 2**24
    RANDOM_MAX_DENOMINATOR: int = 8
    DEFAULT_EDGE_PROBABILITY: str = "1/2"

    # Constructions
    APPROX_MAX_DENOMINATOR: int = 10**6
    MAX_CLASS_SCALE: int = 100_000
    MAX_LEVEL_TRANSVERSALS: int = 2_000_000
    POS_GRID_DENOMINATOR: int = 100

    # Reports
    MAX_WITNESSES: int = 1000
    CSV_SCHEMA_VERSION: str = "1"

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
    }


@lru_cache()
def get_settings() -> Settings:
    """Cached settings instance to avoid re-reading .env on every call."""
    return Settings()

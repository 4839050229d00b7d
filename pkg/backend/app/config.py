"""
Configuration management for the NPN classification toolkit.
"""
from pydantic_settings import BaseSettings
from functools import lru_cache

from app.models.canonical import Method, SymmetryPolicy


class Settings(BaseSettings):
    """Application settings loaded from NPN_* environment variables."""

    # Canonicalization
    method: Method = Method.OPTIMIZED
    symmetry_policy: SymmetryPolicy = SymmetryPolicy.EXACT
    sers_base: int = 3
    exhaustive_cap: int = 6  # 2^7 * 6! = 92160 transforms

    # Cut extraction
    cut_size: int = 8
    cut_limit: int = 64

    # Batch runs
    jobs: int = 1
    seed: int = 20240101
    cache_entries: int = 100000
    log_level: str = "INFO"

    # Server configuration
    host: str = "0.0.0.0"
    port: int = 8000
    debug: bool = False

    # CORS settings
    cors_origins: list[str] = ["*"]

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "NPN_"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()

"""
Simulator configuration management using Pydantic Settings.
Loads configuration from TBSIM_* environment variables and .env file.
"""

from functools import lru_cache
from typing import Literal, Union

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Simulator settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TBSIM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Environment
    environment: str = Field(default="development", description="Environment name")

    # Application
    app_name: str = Field(default="tbsim", description="Application name")
    log_level: str = Field(default="WARNING", description="Logging level")

    # Capacity limits
    max_qubits: int = Field(
        default=26, ge=1, le=34, description="Largest dense register (2^n complex doubles)"
    )
    max_chains: int = Field(
        default=2**24, ge=1, description="Cap on exhaustively enumerated outcome chains"
    )
    max_tree_depth: int = Field(default=24, ge=0, description="Cap on decision tree depth")

    # Numerical tolerances
    validation_tolerance: float = Field(
        default=1e-10, description="Construction-time check for unitarity, projectors, norms"
    )
    identity_tolerance: float = Field(
        default=1e-12, description="Tolerance for algebraic identities"
    )
    zero_denominator_threshold: float = Field(
        default=1e-28, description="Squared-amplitude floor for two-boundary normalization"
    )
    null_projection_threshold: float = Field(
        default=1e-14, description="Norm floor below which a projection outcome is impossible"
    )
    tie_threshold: float = Field(
        default=1e-15, description="Magnitude difference treated as an exact dominance tie"
    )

    # Parallelism
    default_threads: Union[int, Literal["auto"]] = Field(
        default="auto", description="Worker count for Monte Carlo sampling"
    )
    sample_chunk_size: int = Field(
        default=2048, ge=1, description="Samples handed to one worker task"
    )

    # Output
    output_dir: str = Field(default="results", description="Default output directory")

    @field_validator("default_threads", mode="before")
    @classmethod
    def parse_threads(cls, value: object) -> object:
        """Accept numeric strings from the environment."""
        if isinstance(value, str) and value.strip().lower() != "auto":
            return int(value)
        return value

    @property
    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.environment.lower() == "production"

    @property
    def is_development(self) -> bool:
        """Check if running in development environment."""
        return self.environment.lower() == "development"


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.
    Uses lru_cache to create singleton pattern for settings.
    """
    return Settings()


# Global settings instance
settings = get_settings()

"""
Configuration settings for besmints
Environment values only seed defaults; CLI flags always take precedence
"""

from functools import lru_cache

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from besmints.exceptions import ConfigurationError


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="BESMINTS_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    DEBUG: bool = False

    # Refutation search
    KRIPKE_MAX_WORLDS: int = Field(3, ge=1)

    # Cross-check harness
    CROSSCHECK_JOBS: int = Field(1, ge=1)
    RANDOM_SEED: int = 42
    RANDOM_MAX_SIZE: int = Field(8, ge=0)
    RANDOM_ATOMS: int = Field(3, ge=1)
    BOT_WEIGHT: float = Field(0.1, ge=0.0, le=1.0)

    # Bounded support evaluator
    BOUNDED_MAX_RULES: int = Field(2, ge=0)
    BOUNDED_MAX_PREMISES: int = Field(1, ge=0)
    BOUNDED_PREMISE_DEPTH: int = Field(0, ge=0, le=1)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    try:
        return Settings()
    except ValidationError as e:
        raise ConfigurationError(f"invalid BESMINTS_* settings: {e}") from e


settings = get_settings()

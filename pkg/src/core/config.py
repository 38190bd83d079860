"""Settings module for the creasim simulation toolkit."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Project
    PROJECT_NAME: str = "creasim"
    PROJECT_DESCRIPTION: str = "Seedable agent-based simulation of creative societies"
    TOOL_VERSION: str = "0.1.0"

    # Logging
    LOG: str = "WARNING"

    # Artefact space
    ENUMERATION_CAP: int = 250_000

    # Operators
    REJECTION_FACTOR: int = 64  # generate draws at most REJECTION_FACTOR * K grid points
    NEUTRAL_ALIGNMENT: float = 0.5

    # Analysis
    HISTOGRAM_BINS: int = 20

    # Seed panels
    JOBS: int = 1

    model_config = SettingsConfigDict(env_prefix="CREASIM_", env_file=".env", env_file_encoding="utf-8", extra="ignore")

    @property
    def log_level(self) -> int | str:
        """Return the log level as understood by the logging module."""
        if self.LOG.isdigit():
            return int(self.LOG)
        return self.LOG.upper()


settings = Settings()

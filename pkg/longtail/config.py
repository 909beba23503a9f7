from __future__ import annotations

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables or .env file."""

    LONGTAIL_LOG: str | None = None
    LONGTAIL_THREADS: int = 1

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


def load_settings() -> Settings:
    """Read settings fresh so each CLI invocation sees the current environment."""
    return Settings()

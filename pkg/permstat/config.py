"""
Configuration management for permstat.
Loads environment variables (prefix PERMSTAT_) and an optional .env file.
"""

import os
from typing import Optional
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings."""

    # API settings
    API_PREFIX: str = "/api/v1"

    # Sweep settings
    THREADS: Optional[int] = None
    ENUMERATION_BUDGET: int = Field(default=9, ge=1)

    # Debug cross-checks (del_q against the canonical word, f_q images)
    CHECK_INVARIANTS: bool = False

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    model_config = {
        "env_file": ".env",
        "env_prefix": "PERMSTAT_",
        "case_sensitive": True,
        "extra": "ignore",
    }

    @field_validator("THREADS")
    @classmethod
    def _threads_positive(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("THREADS must be at least 1")
        return value

    def effective_threads(self, override: Optional[int] = None) -> int:
        """Worker count: explicit override, then THREADS, then cpu count."""
        if override is not None:
            return override
        if self.THREADS is not None:
            return self.THREADS
        return os.cpu_count() or 1

    def effective_budget(self, override: Optional[int] = None) -> int:
        """Largest degree an exhaustive sweep may enumerate."""
        return override if override is not None else self.ENUMERATION_BUDGET


# Initialize settings
settings = Settings()

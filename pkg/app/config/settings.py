"""
Application configuration settings
"""
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings, read from SFH_* variables or .env"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SFH_",
        case_sensitive=False,
        extra="ignore",
    )

    # Reporting
    output_width: int = 100
    log_level: str = "WARNING"

    # Differential search
    brute_bound: int = 1
    guard_bound: int = 2
    max_generators: int = 20000

    # Self test fuzzing
    selftest_count: int = 50
    fuzz_max_handles: int = 3
    fuzz_max_twists: int = 3
    max_workers: int = 4


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get application settings (singleton)"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment"""
    global _settings
    _settings = None

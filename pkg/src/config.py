"""
Configuration management using Pydantic Settings.
Load from environment variables (prefix ``SIMONLEARN_``) or .env file.
"""
from typing import Dict
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    # Compilation budgets
    dfa_state_cap: int = 1_000_000  # StateBlowup above this many states
    monoid_cap: int = 100_000  # MonoidBlowup for the tagged monoid
    power_monoid_cap: int = 100_000  # MonoidBlowup for reachable subsets

    # Indexing
    verify_index: bool = True

    # Corpus generation
    rng_algorithm: str = "PCG64"

    # Benchmarks
    bench_repeats: int = 3
    bench_workers: int = 4
    bench_query_size: int = 10

    # Logging
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_prefix="SIMONLEARN_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    def caps_dict(self) -> Dict[str, int]:
        """Caps that influence compiled artifacts (part of every config hash)."""
        return {
            "dfa_state_cap": self.dfa_state_cap,
            "monoid_cap": self.monoid_cap,
            "power_monoid_cap": self.power_monoid_cap,
        }


# Global settings instance
settings = Settings()

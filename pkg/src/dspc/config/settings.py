# config/settings.py
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Engine and CLI settings from environment variables."""

    heap_hint: Optional[str] = Field(
        None, description="DSPC_HEAP_HINT, reserved and currently ignored"
    )
    for_epsilon: float = Field(
        1e-9, gt=0.0, description="Relative tolerance on the upper bound of real for"
    )
    default_trials: int = Field(10, ge=1, description="Bench trials per suite")
    audit_cells: bool = Field(
        False, description="Check write-before-read after resume and dcall depth"
    )
    oracle_recursion_limit: int = Field(
        20000, ge=1000, description="Python recursion limit while the oracle runs"
    )
    oracle_stack_mb: int = Field(
        256, ge=8, description="Stack size in MiB of the thread the oracle runs on"
    )
    log_level: str = Field("WARNING", description="Root log level for the CLI")

    model_config = SettingsConfigDict(
        env_prefix="DSPC_", env_file=".env", extra="ignore"
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()

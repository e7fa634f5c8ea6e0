"""Runtime configuration read from the environment and an optional .env file"""
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .schemas import SEED_LIMIT


def detect_workers() -> int:
    """Hardware threads available to this process"""
    try:
        return len(os.sched_getaffinity(0)) or 1
    except AttributeError:
        return os.cpu_count() or 1


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="EVOSORT_", extra="ignore")

    workers: int = Field(default_factory=detect_workers, ge=1)
    memory_cap_bytes: int = Field(default=8 * 1024**3, ge=0)  # 8 GiB of element data
    out_dir: Path = Path("results")
    seed: int = Field(default=42, ge=0, lt=SEED_LIMIT)
    log_level: str = "WARNING"


@lru_cache
def get_settings() -> Settings:
    # .env in the working directory; variables already set in the process win
    load_dotenv()
    return Settings()

# config.py
"""
Process-wide settings. Every value has a default; a .env file or the
environment may override them, and CLI flags override both.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.replace("_", "").strip())
    except ValueError:
        logger.warning("[CONFIG] ignoring non-integer %s=%r, using %d", name, raw, default)
        return default


@dataclass(frozen=True)
class Settings:
    coset_cap: int = 1_000_000
    gen_cap: int = 5000
    depth_cap: int = 3
    tietze_budget: int = 100
    exponent_cap: int = 1_000_000
    log_level: str = "WARNING"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings(
        coset_cap=_env_int("HOMOTOWER_COSET_CAP", Settings.coset_cap),
        gen_cap=_env_int("HOMOTOWER_GEN_CAP", Settings.gen_cap),
        depth_cap=_env_int("HOMOTOWER_DEPTH_CAP", Settings.depth_cap),
        tietze_budget=_env_int("HOMOTOWER_TIETZE_BUDGET", Settings.tietze_budget),
        exponent_cap=_env_int("HOMOTOWER_EXPONENT_CAP", Settings.exponent_cap),
        log_level=os.getenv("HOMOTOWER_LOG_LEVEL", Settings.log_level).upper(),
    )

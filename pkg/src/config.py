from __future__ import annotations

import logging
import os
from dataclasses import dataclass

try:
    from dotenv import load_dotenv
except Exception:  # pragma: no cover - optional dependency at runtime
    load_dotenv = None  # type: ignore

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_BUDGET = 1 << 20


@dataclass(frozen=True)
class EngineConfig:
    """Engine configuration loaded from environment variables.

    Environment variables:
    - ORACLE_BUDGET (default 1048576): largest |n_P| the oracle will enumerate
    - ENGINE_THREADS (default 1)
    - DEFAULT_Q (default '2'): field order used when --q is omitted
    - LOG_LEVEL (default 'WARNING')
    - NO_COLOR: any value disables ANSI colour
    """

    oracle_budget: int
    threads: int
    default_q: str
    log_level: str
    color: bool


def _int_env(key: str, default: int) -> int:
    raw = (os.getenv(key) or "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r: not an integer, using %d", key, raw, default)
        return default
    if value < 1:
        logger.warning("ignoring %s=%d: must be positive, using %d", key, value, default)
        return default
    return value


def load_config() -> EngineConfig:
    """Load configuration from .env (if available) and environment variables."""
    if load_dotenv is not None:
        # Silently load .env if present
        load_dotenv()

    return EngineConfig(
        oracle_budget=_int_env("ORACLE_BUDGET", DEFAULT_ORACLE_BUDGET),
        threads=_int_env("ENGINE_THREADS", 1),
        default_q=os.getenv("DEFAULT_Q", "2").strip() or "2",
        log_level=(os.getenv("LOG_LEVEL", "WARNING").strip() or "WARNING").upper(),
        color=os.getenv("NO_COLOR") is None,
    )

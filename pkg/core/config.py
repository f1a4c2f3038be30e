import os
from dataclasses import dataclass, field
from typing import Mapping, Optional

from core.errors import ConfigError


@dataclass
class EngineConfig:
    max_stack: Optional[int] = None  # None = |w| + 2 per word
    max_steps: Optional[int] = None  # None = 10 * (|w| + 2) * |states|
    cs_budget: int = 1_000_000  # Distinct sentential forms per CSG search
    weak_det_max_len: int = 6


@dataclass
class OracleConfig:
    max_len: int = 10
    jobs: int = 1  # Length strata scanned concurrently when > 1


@dataclass
class OutputConfig:
    color: bool = True


@dataclass
class LoggingConfig:
    level: str = "WARNING"
    format: str = "%(asctime)s | %(levelname)s | %(message)s"


@dataclass
class AppConfig:
    engine: EngineConfig = field(default_factory=EngineConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


def load_config(env: Optional[Mapping[str, str]] = None) -> AppConfig:
    """
    Centralized factory for config.
    Applies WKKIT_* environment overrides on top of the defaults.
    """
    env = os.environ if env is None else env
    config = AppConfig()

    if env.get("WKKIT_COLOR", "").strip() == "0":
        config.output.color = False
    if env.get("WKKIT_LOG_LEVEL"):
        config.logging.level = env["WKKIT_LOG_LEVEL"].strip().upper()

    config.oracle.max_len = _int_env(env, "WKKIT_MAX_LEN", config.oracle.max_len)
    config.oracle.jobs = _int_env(env, "WKKIT_JOBS", config.oracle.jobs)
    config.engine.cs_budget = _int_env(env, "WKKIT_CS_BUDGET", config.engine.cs_budget)
    config.engine.max_stack = _int_env(env, "WKKIT_MAX_STACK", config.engine.max_stack)
    config.engine.max_steps = _int_env(env, "WKKIT_MAX_STEPS", config.engine.max_steps)
    return config


def _int_env(env: Mapping[str, str], name: str, default: Optional[int]) -> Optional[int]:
    raw = env.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ConfigError(f"{name} must be non-negative, got {value}")
    return value

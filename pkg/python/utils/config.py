"""
Kernel configuration

Settings are merged from, lowest priority first: built-in defaults, the
repository's config/default-config.json, the user config file, the file named
by MODKERNEL_CONFIG, and MODKERNEL_* environment variables (a .env file in
the working directory is loaded first).
"""
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, Optional
import logging

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from utils.platform_helper import PlatformHelper

logger = logging.getLogger(__name__)

REPO_DEFAULT_CONFIG = Path(__file__).resolve().parents[2] / "config" / "default-config.json"
ENV_PREFIX = "MODKERNEL_"

# hard ceilings no configuration can lift
HARD_CAPS = {
    "max_terms": 20000,
    "max_prime": 100003,
    "max_precision": 64,
    "max_weight": 200,
    "tau_cache_nmax": 20000,
    "max_tau_n": 100000,
    "max_residues": 100_000_000,
    "max_exponent": 20000,
    "max_manin_n": 5000,
}


class ConfigError(Exception):
    """Raised when a configuration source cannot be read or validated"""
    pass


class KernelConfig(BaseModel):
    """Limits and logging settings; JSON files use the camelCase aliases"""

    model_config = ConfigDict(populate_by_name=True, extra="ignore")

    max_terms: int = Field(5000, alias="maxTerms", ge=1)
    max_prime: int = Field(10007, alias="maxPrime", ge=3)
    max_precision: int = Field(20, alias="maxPrecision", ge=1)
    max_weight: int = Field(64, alias="maxWeight", ge=4)
    tau_cache_nmax: int = Field(2000, alias="tauCacheNmax", ge=1)
    max_tau_n: int = Field(10000, alias="maxTauN", ge=1)
    # p^N residues walked by the Kummer hypothesis scan and by Riemann sums
    max_residues: int = Field(1_000_000, alias="maxResidues", ge=1)
    # polynomial degree and zeta exponent k in the p-adic checks
    max_exponent: int = Field(2000, alias="maxExponent", ge=1)
    max_manin_n: int = Field(500, alias="maxManinN", ge=1)
    log_level: str = Field("INFO", alias="logLevel")
    log_dir: Optional[str] = Field(None, alias="logDir")

    @field_validator(*HARD_CAPS)
    @classmethod
    def _within_hard_cap(cls, value: int, info) -> int:
        cap = HARD_CAPS[info.field_name]
        if value > cap:
            raise ValueError(f"{info.field_name} = {value} exceeds the hard cap {cap}")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value!r}")
        return level

    @field_validator("log_dir")
    @classmethod
    def _empty_is_unset(cls, value: Optional[str]) -> Optional[str]:
        return value or None

    def resolved_log_dir(self) -> Path:
        return Path(self.log_dir) if self.log_dir else PlatformHelper.get_log_dir()


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read config file {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object")
    logger.debug(f"Loaded config from {path}")
    return data


def _env_overrides(environ: Dict[str, str]) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    for name in KernelConfig.model_fields:
        key = ENV_PREFIX + name.upper()
        if key in environ:
            overrides[name] = environ[key]
    return overrides


def _normalize(data: Dict[str, Any]) -> Dict[str, Any]:
    """Map camelCase aliases onto field names so later sources override earlier ones"""
    aliases = {f.alias: name for name, f in KernelConfig.model_fields.items() if f.alias}
    return {aliases.get(k, k): v for k, v in data.items()}


def config_sources(explicit: Optional[str] = None, environ: Optional[Dict[str, str]] = None) -> Iterable[Path]:
    environ = os.environ if environ is None else environ
    candidates = [REPO_DEFAULT_CONFIG, PlatformHelper.get_config_file()]
    env_file = environ.get(ENV_PREFIX + "CONFIG")
    if env_file:
        candidates.append(Path(env_file))
    if explicit:
        candidates.append(Path(explicit))
    return candidates


def load_config(explicit: Optional[str] = None, environ: Optional[Dict[str, str]] = None) -> KernelConfig:
    """
    Build the effective configuration

    ``explicit`` is a path given on the command line; it ranks above the
    MODKERNEL_CONFIG file and below environment variables.
    """
    if environ is None:
        load_dotenv(find_dotenv(usecwd=True), override=False)
        environ = dict(os.environ)

    # files the user named must exist; the default locations are optional
    required = {Path(p) for p in (explicit, environ.get(ENV_PREFIX + "CONFIG")) if p}

    merged: Dict[str, Any] = {}
    for path in config_sources(explicit, environ):
        if path.is_file():
            merged.update(_normalize(_read_json(path)))
        elif path in required:
            raise ConfigError(f"Config file not found: {path}")
    merged.update(_env_overrides(environ))

    try:
        return KernelConfig(**merged)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}")

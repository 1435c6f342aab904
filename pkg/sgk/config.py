"""
Configuration loading and suite configuration validation.
Defaults live in config/verification.yaml; SGK_SEED overrides any seed.
"""

import logging
import os
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .errors import ConfigError, FieldMismatchError
from .fields import ScalarField

logger = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "verification.yaml"

SUITES = ("lemmas", "charts", "orbits", "sections", "tower", "all")

SEED_ENV = "SGK_SEED"

SEED_MAX = 2 ** 64 - 1


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """Load the verification configuration file"""
    path = Path(path) if path is not None else CONFIG_PATH
    try:
        with open(path, "r") as f:
            config = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise ConfigError(f"configuration file {path} not found")
    except yaml.YAMLError as e:
        raise ConfigError(f"configuration file {path} is not valid YAML: {e}")
    if not isinstance(config, dict):
        raise ConfigError(f"configuration file {path} must hold a mapping")
    return config


@dataclass(frozen=True)
class SuiteConfig:
    r: int
    q: int
    suite: str = "all"
    samples: int = 100
    seed: int = 7
    field: str = "rational"
    box: int = 10
    triples: int = 20
    grid: Dict[str, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.r < 1:
            raise ConfigError(f"r must be >= 1, got {self.r}")
        if self.q < 2:
            raise ConfigError(f"q must be >= 2, got {self.q}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}, expected one of {', '.join(SUITES)}")
        if not 0 <= self.seed <= SEED_MAX:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")
        if self.box < 1:
            raise ConfigError(f"sampling box must be >= 1, got {self.box}")
        try:
            modulus = ScalarField(self.field).modulus
        except FieldMismatchError as e:
            raise ConfigError(str(e))
        if modulus is not None and modulus <= 2 * self.box:
            raise ConfigError(f"field modulus {modulus} must exceed the sampling range 2*box={2 * self.box}")

    @property
    def scalar_field(self) -> ScalarField:
        return ScalarField(self.field)

    @property
    def n(self) -> int:
        return self.r * self.q + 1

    def grid_bound(self, key: str, default: int) -> int:
        return int(self.grid.get(key, default))

    def params(self) -> Dict[str, Any]:
        return {"r": self.r, "q": self.q, "field": self.field, "samples": self.samples, "seed": self.seed}


def resolve_seed(seed: Optional[int], default: int) -> int:
    """SGK_SEED beats the command line, which beats the config default"""
    env_seed = os.getenv(SEED_ENV)
    if env_seed is not None and env_seed.strip():
        try:
            value = int(env_seed)
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer, got {env_seed!r}")
        logger.info(f"Seed overridden by {SEED_ENV}={value}")
        return value
    return default if seed is None else seed


def build_suite_config(
    r: int,
    q: int,
    suite: str = "all",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    field_spec: Optional[str] = None,
    settings: Optional[Dict[str, Any]] = None,
) -> SuiteConfig:
    """Merge CLI values over configuration file defaults"""
    settings = load_config() if settings is None else settings
    defaults = settings.get("defaults", {}) or {}
    charts = settings.get("charts", {}) or {}
    try:
        return SuiteConfig(
            r=int(r),
            q=int(q),
            suite=suite,
            samples=int(samples if samples is not None else defaults.get("samples", 100)),
            seed=resolve_seed(seed, int(defaults.get("seed", 7))),
            field=field_spec or defaults.get("field", "rational"),
            box=int(defaults.get("box", 10)),
            triples=int(charts.get("triples", 20)),
            grid=dict(settings.get("grids", {}) or {}),
        )
    except (TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"invalid configuration value: {e}")


__all__ = ["CONFIG_PATH", "SUITES", "SEED_ENV", "SuiteConfig", "load_config", "resolve_seed", "build_suite_config"]

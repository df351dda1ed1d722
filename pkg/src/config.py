"""
Configuration handling for hypwave runs
"""
import os
import json
import logging
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .exceptions import UsageError
from .models.space import SpaceParams

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240517


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}")
        return None


def default_config() -> Dict[str, Any]:
    """
    Build the default configuration, including environment overrides

    Returns:
        Nested dictionary of configuration parameters
    """
    seed = _env_int("HYPWAVE_SEED")
    return {
        "space": {"m1": 2, "m2": 0},
        "tolerances": {
            "quad_abs": 1e-10,
            "quad_rel": 1e-8,
            "cancellation": 1e-8,
            "size_slack": 1e-10,
            "partition": 1e-12,
            "ode_rtol": 1e-11,
            "ode_atol": 1e-13,
        },
        "grid": {
            "s_min": 0.01,
            "s_max": 12.0,
            "s_points": 241,
            "lam_max": 60.0,
            "lam_points": 3001,
        },
        "kernel": {
            "exclusion_radius": 0.01,
            "contour": "auto",
            "rtol": 1e-3,
            "atol": 1e-12,
            "tail": "panels",
        },
        "hardy": {
            "qmc_points_per_ball": 10000,
            "net_budget": 20000,
        },
        "seed": DEFAULT_SEED if seed is None else seed,
        "threads": _env_int("HYPWAVE_THREADS"),
        "output": {"directory": "."},
        "log": {
            "level": os.environ.get("HYPWAVE_LOG_LEVEL", "INFO"),
            "file": None,
        },
    }


def load_config(config_path: Optional[str] = None,
                overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Load run configuration from defaults, command-line overrides and a JSON file

    The JSON file has the last word: values it sets win over flags.

    Args:
        config_path: Path to a JSON config; falls back to CONFIG_PATH
        overrides: Nested dictionary of values taken from command-line flags

    Returns:
        Dictionary with configuration parameters
    """
    config = default_config()
    if overrides:
        _deep_update(config, overrides)

    path = config_path or os.environ.get("CONFIG_PATH", "")
    if path:
        if not os.path.exists(path):
            if config_path:
                raise FileNotFoundError(path)
            logger.warning(f"CONFIG_PATH {path} does not exist, using defaults")
            return config
        try:
            with open(path, 'r') as f:
                file_config = json.load(f)
            # Merge configurations
            _deep_update(config, file_config)
            logger.info(f"Loaded configuration from {path}")
        except json.JSONDecodeError as e:
            logger.error(f"Failed to parse config file {path}: {e}")
            raise UsageError(f"invalid JSON in {path}: {e}") from e

    return config


def _deep_update(target: Dict, source: Dict) -> Dict:
    """
    Recursively update a nested dictionary
    """
    for key, value in source.items():
        if isinstance(value, dict) and key in target and isinstance(target[key], dict):
            _deep_update(target[key], value)
        else:
            target[key] = value
    return target


class Tolerances(BaseModel):
    model_config = ConfigDict(frozen=True)

    quad_abs: float = 1e-10
    quad_rel: float = 1e-8
    cancellation: float = 1e-8
    size_slack: float = 1e-10
    partition: float = 1e-12
    ode_rtol: float = 1e-11
    ode_atol: float = 1e-13

    @field_validator("*")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tolerances must be positive")
        return value


class GridSpec(BaseModel):
    """Sampling grids in s and λ"""
    model_config = ConfigDict(frozen=True)

    s_min: float = 0.01
    s_max: float = 12.0
    s_points: int = Field(241, ge=3)
    lam_max: float = Field(60.0, gt=0)
    lam_points: int = Field(3001, ge=3)

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if not 0 <= self.s_min < self.s_max:
            raise ValueError("need 0 <= s_min < s_max")
        # Filon error estimates halve the λ grid
        if (self.lam_points - 1) % 4:
            raise ValueError("lam_points - 1 must be divisible by 4")
        return self

    def refined(self) -> "GridSpec":
        """Grid with twice the resolution on the same ranges"""
        return self.model_copy(update={
            "s_points": 2 * self.s_points - 1,
            "lam_points": 2 * self.lam_points - 1,
        })


class KernelOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    exclusion_radius: float = Field(0.01, ge=0)
    contour: str = "auto"
    rtol: float = Field(1e-3, gt=0)
    atol: float = Field(1e-12, gt=0)
    tail: str = "panels"

    @field_validator("tail")
    @classmethod
    def _tail_method(cls, value: str) -> str:
        if value not in ("panels", "qawf"):
            raise ValueError("tail must be panels or qawf")
        return value

    @field_validator("contour")
    @classmethod
    def _contour_mode(cls, value: str) -> str:
        if value not in ("auto", "on", "off"):
            raise ValueError("contour must be one of auto, on, off")
        return value


class HardyOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    qmc_points_per_ball: int = Field(10000, ge=256)
    net_budget: int = Field(20000, ge=16)


class RunConfig(BaseModel):
    """Validated configuration of a single CLI run"""
    model_config = ConfigDict(frozen=True)

    space: Dict[str, int] = Field(default_factory=lambda: {"m1": 2, "m2": 0})
    tolerances: Tolerances = Field(default_factory=Tolerances)
    grid: GridSpec = Field(default_factory=GridSpec)
    kernel: KernelOptions = Field(default_factory=KernelOptions)
    hardy: HardyOptions = Field(default_factory=HardyOptions)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2 ** 64)
    threads: Optional[int] = Field(None, ge=1)
    output: Dict[str, Any] = Field(default_factory=lambda: {"directory": "."})
    log: Dict[str, Any] = Field(default_factory=lambda: {"level": "INFO", "file": None})

    @field_validator("space")
    @classmethod
    def _valid_space(cls, value: Dict[str, int]) -> Dict[str, int]:
        SpaceParams(int(value.get("m1", 0)), int(value.get("m2", 0)))
        return value

    @property
    def space_params(self) -> SpaceParams:
        return SpaceParams(int(self.space["m1"]), int(self.space.get("m2", 0)))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """
        Build a RunConfig, turning validation failures into usage errors

        Args:
            data: Nested configuration dictionary (see load_config)

        Returns:
            Validated RunConfig
        """
        try:
            return cls.model_validate(data)
        except ValueError as e:
            raise UsageError(f"invalid configuration: {e}") from e

"""
Run configuration for the walk_centrality application.

Command-line values are validated into a RunConfig; anything left unset falls
back to the environment (a local .env is loaded by the entry point) and then
to the defaults in constants.
"""

import os
from typing import List, Optional, Tuple
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from walk_centrality.application import constants as const
from walk_centrality.application.errors import ConfigurationError
from walk_centrality.application.weight_functions import WeightConfig, parse_weight_function


def _env_number(name, default, cast):
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return cast(value)
    except ValueError:
        raise ConfigurationError(f"Environment variable {name}={value!r} is not a valid {cast.__name__}")


def env_int(name, default):
    return _env_number(name, default, int)


def env_float(name, default):
    return _env_number(name, default, float)


class RunConfig(BaseModel):
    command: str = const.COMPUTE
    inputs: List[str] = Field(default_factory=list)
    undirected: bool = False
    delta: int = 1
    interval: Optional[Tuple[int, int]] = None
    phi: str = const.ONE
    phi_in: Optional[str] = None
    phi_out: Optional[str] = None
    phi_m: str = const.ONE
    method: str = const.AUTO
    epsilon: float = Field(default_factory=lambda: env_float(const.EPSILON, const.DEFAULT_EPSILON))
    max_length: Optional[int] = None
    mode: str = const.TWC
    output: Optional[str] = None
    threads: int = Field(default_factory=lambda: env_int(const.THREADS, const.DEFAULT_THREADS))
    top: Optional[float] = None
    dense_cap: int = Field(default_factory=lambda: env_int(const.DENSE_CAP, const.DEFAULT_DENSE_CAP))
    walk_cap: int = Field(default_factory=lambda: env_int(const.WALK_CAP, const.DEFAULT_WALK_CAP))
    divergence_window: int = Field(
        default_factory=lambda: env_int(const.DIVERGENCE_WINDOW, const.DEFAULT_DIVERGENCE_WINDOW))
    max_iterations: int = Field(
        default_factory=lambda: env_int(const.MAX_ITERATIONS, const.DEFAULT_MAX_ITERATIONS))

    @field_validator("phi", "phi_in", "phi_out", "phi_m")
    @classmethod
    def check_weight_function(cls, value):
        if value is not None:
            parse_weight_function(value)
        return value

    @field_validator("method")
    @classmethod
    def check_method(cls, value):
        if value not in const.METHODS:
            raise ValueError(f"method must be one of {', '.join(const.METHODS)}")
        return value

    @field_validator("mode")
    @classmethod
    def check_mode(cls, value):
        if value not in const.MODES:
            raise ValueError(f"mode must be one of {', '.join(const.MODES)}")
        return value

    @field_validator("delta")
    @classmethod
    def check_delta(cls, value):
        if value < 0:
            raise ValueError("delta must be non-negative")
        return value

    @field_validator("epsilon")
    @classmethod
    def check_epsilon(cls, value):
        if not value > 0:
            raise ValueError("epsilon must be positive")
        return value

    @field_validator("threads", "dense_cap", "walk_cap", "divergence_window", "max_iterations")
    @classmethod
    def check_positive(cls, value):
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("max_length")
    @classmethod
    def check_max_length(cls, value):
        if value is not None and value < 1:
            raise ValueError("max_length must be at least 1")
        return value

    @field_validator("top")
    @classmethod
    def check_top(cls, value):
        if value is not None and not 0 < value <= 1:
            raise ValueError("top must be in (0, 1]")
        return value

    @field_validator("interval")
    @classmethod
    def check_interval(cls, value):
        if value is not None:
            start, end = value
            if start < 0 or start > end:
                raise ValueError(f"interval [{start}, {end}] needs 0 <= start <= end")
        return value

    @model_validator(mode="after")
    def check_combination(self):
        if self.method == const.STREAM and self.delta == 0:
            raise ValueError("method stream requires delta > 0; use exact or approx for delta = 0")
        if self.method == const.ORACLE and self.delta == 0 and self.max_length is None:
            raise ValueError("method oracle requires --max-length when delta = 0")
        if self.mode == const.KATZ:
            kind = parse_weight_function(self.phi_out or self.phi).kind
            if kind not in (const.ALPHA, const.ONE):
                raise ValueError(f"katz mode needs phi of kind alpha or one, got {kind}")
        return self

    def weight_config(self) -> WeightConfig:
        return WeightConfig(phi_in=parse_weight_function(self.phi_in or self.phi),
                            phi_out=parse_weight_function(self.phi_out or self.phi),
                            phi_m=parse_weight_function(self.phi_m))


def _describe(error: ValidationError):
    problems = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"])
        message = item["msg"].removeprefix("Value error, ")
        problems.append(f"{location}: {message}" if location else message)
    return "; ".join(problems)


def build_run_config(**values) -> RunConfig:
    """RunConfig from keyword values; None means 'not given' and keeps the default."""
    try:
        return RunConfig(**{key: value for key, value in values.items() if value is not None})
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {_describe(e)}")

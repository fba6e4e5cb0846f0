"""Flat key = value run configuration with defaults, validation, and overrides.

Files hold one ``key = value`` per line with ``#`` comments; keys match the
CLI flag names.  Powers accept an optional "dB" suffix as a convenience
(``pmax = 10 dB`` means the linear value 10).  Flag values override file
values, which override the documented defaults.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .analytics import Scenario
from .copula import DependenceParam
from .exceptions import ConfigError

DEFAULT_SIGNAL_DIM = 4


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters; defaults reproduce the reference operating point."""

    users: int = 10
    ports: int = 10
    theta: float = 1.0
    pmax: float = 10.0
    sigma2: float = 1.0
    tau: float = 0.3
    trials: int = 10_000
    seed: int = 0
    out: str | None = None

    def with_overrides(self, **overrides) -> "RunConfig":
        """New config with the non-None overrides applied (flags beat files)."""
        applied = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(applied) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ConfigError(f"unknown keys: {', '.join(sorted(unknown))}")
        cfg = dataclasses.replace(self, **applied)
        _validate(cfg)
        return cfg

    def scenario(self, signal_dim: int = DEFAULT_SIGNAL_DIM) -> Scenario:
        return Scenario(
            n_users=self.users,
            n_ports=self.ports,
            dep=DependenceParam(self.theta),
            p_max=self.pmax,
            sigma2=self.sigma2,
            signal_dim=signal_dim,
        )


_INT_KEYS = {"users", "ports", "trials", "seed"}
_FLOAT_KEYS = {"theta", "pmax", "sigma2", "tau"}
_DB_KEYS = {"pmax", "sigma2"}
_STR_KEYS = {"out"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def parse_float_maybe_db(text: str, db_ok: bool) -> float:
    raw = text.strip()
    scale_db = False
    if db_ok and raw.lower().endswith("db"):
        raw = raw[:-2].strip()
        scale_db = True
    value = float(raw)
    return 10.0 ** (value / 10.0) if scale_db else value


def _parse_value(key: str, text: str, line: int) -> int | float | str:
    try:
        if key in _INT_KEYS:
            return int(text.strip())
        if key in _FLOAT_KEYS:
            return parse_float_maybe_db(text, db_ok=key in _DB_KEYS)
        return text.strip()
    except ValueError:
        raise ConfigError(f"cannot parse value {text.strip()!r} for key {key!r}", line) from None


def _validate(cfg: RunConfig) -> None:
    def fail(field: str, constraint: str, value):
        raise ConfigError(f"invalid {field} = {value!r}: {field} must be {constraint}")

    if cfg.users < 1:
        fail("users", ">= 1", cfg.users)
    if cfg.ports < 1:
        fail("ports", ">= 1", cfg.ports)
    if not (math.isfinite(cfg.theta) and cfg.theta >= 1.0):
        fail("theta", ">= 1", cfg.theta)
    if not (math.isfinite(cfg.pmax) and cfg.pmax > 0.0):
        fail("pmax", "> 0", cfg.pmax)
    if not (math.isfinite(cfg.sigma2) and cfg.sigma2 > 0.0):
        fail("sigma2", "> 0", cfg.sigma2)
    if not (math.isfinite(cfg.tau) and cfg.tau > 0.0):
        fail("tau", "> 0", cfg.tau)
    if cfg.trials < 0:
        fail("trials", ">= 0", cfg.trials)
    if cfg.seed < 0:
        fail("seed", ">= 0", cfg.seed)


def parse_config(source: str) -> RunConfig:
    """Parse configuration text into a validated RunConfig.

    Empty input yields the documented defaults.  Unknown keys and malformed
    lines raise ConfigError with the line number; a repeated key keeps its
    last assignment.
    """
    values: dict[str, int | float | str] = {}
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, text = line.partition("=")
        key = key.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        values[key] = _parse_value(key, text, lineno)
    cfg = RunConfig(**values)
    _validate(cfg)
    return cfg


def load_config(path) -> RunConfig:
    """Read and parse a configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())

"""Harness configuration: defaults, JSON config file, CYCLICQ_* environment overrides, CLI flags."""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

SUITES = ("weyl", "curve", "weights", "intertwiners", "lops", "transfer", "tau2")
ENV_PREFIX = "CYCLICQ_"


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    N: int = 3
    m: int = 1
    k: Optional[list] = None          # [re, im]; drawn from the seed when absent
    kappa0: list = field(default_factory=lambda: [1.0, 0.0])
    kappa1: list = field(default_factory=lambda: [1.0, 0.0])
    alpha: float = 0.3
    M: int = 2
    seed: int = 42
    draws: int = 5
    tol_rel: float = 1e-9
    tol_transfer: float = 1e-8
    suites: list = field(default_factory=lambda: list(SUITES))
    flip_c0: bool = False
    flip_zs: bool = False
    json_out: Optional[str] = None
    csv_out: Optional[str] = None

    def validate(self) -> "Config":
        if not isinstance(self.N, int) or self.N < 3 or self.N % 2 == 0:
            raise ConfigError(f"N must be an odd integer >= 3, got {self.N!r}")
        if gcd(self.m, self.N) != 1:
            raise ConfigError(f"root exponent m={self.m} must be coprime to N={self.N}")
        if abs(2 * self.alpha - round(2 * self.alpha)) < 1e-12:
            raise ConfigError(f"alpha={self.alpha}: 2*alpha must not be an integer")
        if self.M < 1:
            raise ConfigError("M (number of sites) must be >= 1")
        if self.N ** (self.M + 1) > 2_000_000:
            raise ConfigError(f"N^(M+1) = {self.N ** (self.M + 1)} exceeds the dimension budget")
        # the chains are dense: N 2^M for V-sites, N^(M+1) for W-sites
        D = max(self.N * 2 ** self.M, self.N ** (self.M + 1))
        if 16 * D * D > 4 * 2 ** 30:
            raise ConfigError(f"dense chain operators of size {D} would exceed 4 GiB")
        if self.draws < 1:
            raise ConfigError("draws must be >= 1")
        if not (self.tol_rel > 0 and self.tol_transfer > 0):
            raise ConfigError("tolerances must be positive")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites {bad}; choose from {list(SUITES)}")
        for name in ("kappa0", "kappa1"):
            v = getattr(self, name)
            if len(v) != 2 or complex(*v) == 0:
                raise ConfigError(f"{name} must be a nonzero [re, im] pair")
        if self.k is not None and len(self.k) != 2:
            raise ConfigError("k must be an [re, im] pair")
        return self

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_FIELDS = {f.name: f for f in dataclasses.fields(Config)}


def _coerce(name: str, raw: str):
    """Parse an environment string for field ``name``."""
    default = getattr(Config(), name)
    if name in ("k", "kappa0", "kappa1", "suites"):
        if name == "suites" and not raw.strip().startswith("["):
            return [s for s in raw.split(",") if s]
        return json.loads(raw)
    if isinstance(default, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def load(path: Optional[str] = None, overrides: Optional[dict] = None, environ=None) -> Config:
    """Defaults, then the JSON file, then CYCLICQ_<FIELD> variables, then explicit overrides."""
    data = {}
    if path:
        with open(path) as fh:
            data.update(json.load(fh))
    env = os.environ if environ is None else environ
    for name in _FIELDS:
        key = ENV_PREFIX + name.upper()
        if key in env:
            try:
                data[name] = _coerce(name, env[key])
            except (ValueError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot parse {key}={env[key]!r}: {exc}") from None
    for key, v in (overrides or {}).items():
        if v is not None:
            data[key] = v
    unknown = set(data) - set(_FIELDS)
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    return Config(**data).validate()

"""Run configuration: flat ``key = value`` sections parsed with configparser.

Example::

    [run]
    case = morse
    n_max = 2

    [params]
    A = 3
    B = 1
    alpha = 0
    beta = -1

    [grid]
    x_lo = -12
    x_hi = 12
    n_points = 2001

    [verify]
    grids = 2001, 4001, 8001
    energy_shift = 0
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .profiles import Grid

__all__ = ["CASES", "RunConfig", "load_config", "parse_config"]

CASES = ("pt", "morse", "swanson_i", "swanson_ii", "custom")

# required / optional keys per case; every value is a float unless listed in _TEXT
_REQUIRED = {
    "pt": ("V1", "V2", "alpha", "beta"),
    "morse": ("A", "B", "alpha", "beta"),
    "swanson_i": ("alpha_s", "beta_s"),
    "swanson_ii": ("omega", "alpha_s", "beta_s", "gamma_s", "delta_s"),
    "custom": ("potential",),
}
_OPTIONAL = {
    "pt": ("epsilon", "branch"),
    "morse": (),
    "swanson_i": ("branch",),
    "swanson_ii": (),
    "custom": (),
}
_TEXT = {"branch", "potential"}
_POTENTIALS = {"box": (0.0, np.pi), "harmonic": (-10.0, 10.0)}

_DEFAULT_GRID = {
    "pt": (1e-3, 25.0),
    "morse": (-12.0, 12.0),
    "swanson_i": (0.5, 6.0),
    "swanson_ii": (-10.0, 20.0),
}


@dataclass(frozen=True)
class RunConfig:
    case: str
    params: dict
    grid: Grid
    n_max: int = 0
    n_min: int = 0
    verify_grids: tuple = (2001, 4001, 8001)
    energy_shift: float = 0.0
    residual_nodes: int = 10000
    source: str | None = field(default=None, compare=False)

    @property
    def levels(self) -> range:
        return range(self.n_min, self.n_max + 1)


def _float(section, key, raw):
    try:
        v = float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from None
    if not np.isfinite(v):
        raise ConfigError(f"[{section}] {key} must be finite")
    return v


def _int(section, key, raw):
    v = _float(section, key, raw)
    if v != int(v):
        raise ConfigError(f"[{section}] {key} = {raw!r} is not an integer")
    return int(v)


def _case_params(case, raw: dict) -> dict:
    missing = [k for k in _REQUIRED[case] if k not in raw]
    if missing:
        raise ConfigError(f"case {case} needs [params] {', '.join(missing)}")
    known = set(_REQUIRED[case]) | set(_OPTIONAL[case])
    out = {}
    for k in sorted(known & set(raw)):
        out[k] = raw[k].strip() if k in _TEXT else _float("params", k, raw[k])
    if case == "custom" and out["potential"] not in _POTENTIALS:
        raise ConfigError(f"custom potential must be one of {sorted(_POTENTIALS)}, got {out['potential']!r}")
    return out


def parse_config(text: str, case: str | None = None, source: str | None = None) -> RunConfig:
    """Build a :class:`RunConfig` from config text; ``case`` overrides ``[run] case``."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keep V1, A, B distinct from lower-case names
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {' '.join(str(exc).split())}") from None
    run = dict(cp["run"]) if cp.has_section("run") else {}
    case = case or run.get("case")
    if case is None:
        raise ConfigError("no case given ([run] case or --case)")
    case = case.strip()
    if case not in CASES:
        raise ConfigError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    n_max = _int("run", "n_max", run.get("n_max", "0"))
    n_min = _int("run", "n_min", run.get("n_min", "0"))
    if n_min < 0 or n_max < n_min:
        raise ConfigError(f"need 0 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}")
    params = _case_params(case, dict(cp["params"]) if cp.has_section("params") else {})

    g = dict(cp["grid"]) if cp.has_section("grid") else {}
    lo_hi = _POTENTIALS[params["potential"]] if case == "custom" else _DEFAULT_GRID[case]
    x_lo = _float("grid", "x_lo", g["x_lo"]) if "x_lo" in g else lo_hi[0]
    x_hi = _float("grid", "x_hi", g["x_hi"]) if "x_hi" in g else lo_hi[1]
    n_points = _int("grid", "n_points", g.get("n_points", "2001"))
    try:
        grid = Grid(x_lo, x_hi, n_points)
    except ValueError as exc:
        raise ConfigError(f"invalid grid: {exc}") from None

    v = dict(cp["verify"]) if cp.has_section("verify") else {}
    if "grids" in v:
        grids = tuple(_int("verify", "grids", s) for s in v["grids"].split(",") if s.strip())
    else:
        grids = (2001, 4001, 8001)
    if not grids or min(grids) < 5:
        raise ConfigError("[verify] grids needs at least one size >= 5")
    shift = _float("verify", "energy_shift", v.get("energy_shift", "0"))
    rn = _int("verify", "residual_nodes", v.get("residual_nodes", "10000"))
    if rn < 5:
        raise ConfigError("[verify] residual_nodes must be >= 5")
    return RunConfig(case, params, grid, n_max, n_min, grids, shift, rn, source)


def load_config(path, case: str | None = None) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {str(p)!r}: {exc.strerror}") from None
    return parse_config(text, case, str(p))

"""Mass profiles, potential families, von Roos ordering and the effective potential.

Units are dimensionless with hbar = 2 m0 = 1, so the position-dependent mass is
m(x) = m0 M(x) and only M enters the formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError

__all__ = [
    "AmbiguityParams",
    "make_ambiguity",
    "Grid",
    "MassProfile",
    "PotentialSpec",
    "eval_mass",
    "mass_derivatives",
    "effective_potential",
    "veff_function",
]


@dataclass(frozen=True)
class AmbiguityParams:
    """Von Roos ordering exponents; gamma is always -1 - alpha - beta."""

    alpha: float
    beta: float

    @property
    def gamma(self) -> float:
        return -1.0 - self.alpha - self.beta

    @property
    def q(self) -> float:
        """The combination alpha (alpha + beta + 1) that recurs in every formula."""
        return self.alpha * (self.alpha + self.beta + 1.0)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


def make_ambiguity(alpha: float, beta: float) -> AmbiguityParams:
    return AmbiguityParams(float(alpha), float(beta))


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_lo, x_hi] with ``n_points`` nodes."""

    x_lo: float
    x_hi: float
    n_points: int

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ValueError(f"n_points must be an integer >= 3, got {self.n_points}")
        if not (np.isfinite(self.x_lo) and np.isfinite(self.x_hi)) or self.x_hi <= self.x_lo:
            raise ValueError(f"need finite x_lo < x_hi, got ({self.x_lo}, {self.x_hi})")

    @property
    def spacing(self) -> float:
        return (self.x_hi - self.x_lo) / (self.n_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, self.n_points)

    @property
    def mid_index(self) -> int:
        return (self.n_points - 1) // 2


_KINDS = ("constant", "inverse_sinh", "exponential_decay", "tabulated")


@dataclass(frozen=True)
class MassProfile:
    """Dimensionless mass M(x) > 0 on an open interval.

    Use the constructors: :meth:`constant`, :meth:`inverse_sinh`,
    :meth:`exponential_decay` and :meth:`tabulated`.
    """

    kind: str
    domain: tuple[float, float]
    m0: float = 1.0
    _spline: CubicSpline | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown mass kind {self.kind!r}")

    @classmethod
    def constant(cls, m0: float = 1.0) -> "MassProfile":
        if m0 <= 0:
            raise ValueError("constant mass must be positive")
        return cls("constant", (-np.inf, np.inf), float(m0))

    @classmethod
    def inverse_sinh(cls) -> "MassProfile":
        """M(x) = 1/sinh x on (0, inf); simple pole at the origin."""
        return cls("inverse_sinh", (0.0, np.inf))

    @classmethod
    def exponential_decay(cls) -> "MassProfile":
        """M(x) = exp(-2x) on the whole real line."""
        return cls("exponential_decay", (-np.inf, np.inf))

    @classmethod
    def tabulated(cls, x, m) -> "MassProfile":
        """Cubic-spline mass through samples; derivatives are second-order accurate."""
        x = np.asarray(x, dtype=float)
        m = np.asarray(m, dtype=float)
        if x.ndim != 1 or x.shape != m.shape or x.size < 4:
            raise ValueError("tabulated mass needs matching 1-D samples (>= 4 points)")
        if np.any(np.diff(x) <= 0):
            raise ValueError("tabulated mass abscissae must be strictly increasing")
        if np.any(m <= 0):
            raise ValueError("tabulated mass must be positive")
        return cls("tabulated", (float(x[0]), float(x[-1])), 1.0, CubicSpline(x, m))

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        return bool(np.all((x > lo) & (x < hi)))

    def check(self, x) -> None:
        if not self.contains(x):
            raise DomainError(f"x outside the open domain {self.domain} of the {self.kind} mass")


def mass_derivatives(profile: MassProfile, z):
    """Return (M, M', M'') without domain checks; accepts complex arguments."""
    z = np.asarray(z)
    if profile.kind == "constant":
        one = np.ones_like(z, dtype=np.result_type(z, float))
        return profile.m0 * one, 0.0 * one, 0.0 * one
    if profile.kind == "inverse_sinh":
        s, c = np.sinh(z), np.cosh(z)
        return 1.0 / s, -c / s**2, (c**2 + 1.0) / s**3
    if profile.kind == "exponential_decay":
        m = np.exp(-2.0 * z)
        return m, -2.0 * m, 4.0 * m
    sp = profile._spline
    return sp(z), sp(z, 1), sp(z, 2)


def eval_mass(profile: MassProfile, x):
    """M(x), M'(x), M''(x) at interior points; raises DomainError otherwise."""
    profile.check(x)
    out = mass_derivatives(profile, np.asarray(x, dtype=float))
    if np.ndim(x) == 0:
        return tuple(float(v) for v in out)
    return out


@dataclass(frozen=True)
class PotentialSpec:
    """A bare potential V(x).

    ``poschl_teller``: V1 coth x + V2 + V3 sinh x.
    ``morse``: V0 exp(2x) - B (2A + 1) exp(x).
    ``tabulated``: cubic spline through samples.
    ``function``: any vectorised callable (used by custom CLI runs and tests).
    """

    family: str
    params: tuple = ()
    _fn: Callable | None = field(default=None, compare=False, repr=False)

    @classmethod
    def poschl_teller(cls, V1: float, V2: float, V3: float) -> "PotentialSpec":
        return cls("poschl_teller", (float(V1), float(V2), float(V3)))

    @classmethod
    def morse(cls, V0: float, A: float, B: float) -> "PotentialSpec":
        return cls("morse", (float(V0), float(A), float(B)))

    @classmethod
    def tabulated(cls, x, v) -> "PotentialSpec":
        return cls("tabulated", (), CubicSpline(np.asarray(x, float), np.asarray(v, float)))

    @classmethod
    def function(cls, fn: Callable, label: str = "function") -> "PotentialSpec":
        return cls("function", (label,), fn)

    def __call__(self, x):
        x = np.asarray(x)
        if self.family == "poschl_teller":
            V1, V2, V3 = self.params
            return V1 / np.tanh(x) + V2 + V3 * np.sinh(x)
        if self.family == "morse":
            V0, A, B = self.params
            return V0 * np.exp(2.0 * x) - B * (2.0 * A + 1.0) * np.exp(x)
        return self._fn(x)


def _veff(V: PotentialSpec, profile: MassProfile, amb: AmbiguityParams, x):
    m, m1, m2 = mass_derivatives(profile, x)
    kin = amb.q + amb.beta + 1.0
    return V(x) + 0.5 * (amb.beta + 1.0) * m2 / m**2 - kin * m1**2 / m**3


def effective_potential(V: PotentialSpec, profile: MassProfile, amb: AmbiguityParams, x):
    """V + (beta+1) M''/(2 M^2) - [alpha(alpha+beta+1) + beta + 1] M'^2 / M^3."""
    profile.check(x)
    out = _veff(V, profile, amb, np.asarray(x, dtype=float))
    return float(out) if np.ndim(x) == 0 else out


def veff_function(V: PotentialSpec, profile: MassProfile, amb: AmbiguityParams) -> Callable:
    """Effective potential as a callable; no domain checks, complex-safe for analytic families."""
    return lambda x: _veff(V, profile, amb, x)

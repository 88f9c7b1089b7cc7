"""Quantum momentum functions, the mass-dependent Hamilton-Jacobi equation and its Riccati form.

Conventions (hbar = 2 m0 = 1):

    p~ = -i phi'/phi                         mass-weighted momentum
    -i p~' + p~^2 + i (M'/M) p~ + M (V_eff - eps) = 0
    p  = p~ + i M'/(2M)                      ordinary momentum of psi = phi / sqrt(M)
    psi'' + G psi = 0,   G = a c - b^2/4 + b'/2   with  a = -i M (V_eff - eps), b = M'/M, c = -i
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import AllZeroError, DomainError, GridMismatchError, SingularNodeError
from .profiles import Grid, MassProfile, mass_derivatives

__all__ = [
    "SampledComplexFunction",
    "RiccatiCoefficients",
    "EnergyValue",
    "sample",
    "momentum_from_wavefunction",
    "qemhj_residual",
    "qemhj_relative_residual",
    "qhj_residual",
    "momentum_shift",
    "momentum_unshift",
    "wavefunction_from_momentum",
    "riccati_coefficients",
    "G_from_coefficients",
    "G_direct",
    "g_function",
]

TOL_ZERO = 1e-12


@dataclass(frozen=True)
class SampledComplexFunction:
    """Complex samples on a grid; ``singular`` flags nodes holding genuine poles."""

    grid: Grid
    values: np.ndarray = field(compare=False)
    singular: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"{vals.size} samples for a grid of {self.grid.n_points} nodes"
            )
        mask = np.zeros(vals.shape, bool) if self.singular is None else np.asarray(self.singular, bool)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "singular", mask)

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def has_singular(self) -> bool:
        return bool(self.singular.any())

    def with_values(self, values, singular=None) -> "SampledComplexFunction":
        return SampledComplexFunction(self.grid, values, self.singular if singular is None else singular)


@dataclass(frozen=True)
class RiccatiCoefficients:
    """p' = a + b p + c p^2."""

    a: Callable
    b: Callable
    c: complex = -1j
    domain: tuple = (-np.inf, np.inf)


@dataclass(frozen=True)
class EnergyValue:
    epsilon: float

    def __post_init__(self):
        if not np.isfinite(self.epsilon):
            raise ValueError("energy must be finite")


def _eps(eps) -> float:
    return eps.epsilon if isinstance(eps, EnergyValue) else float(eps)


def sample(fn: Callable, grid: Grid) -> SampledComplexFunction:
    return SampledComplexFunction(grid, fn(grid.nodes))


def _derivative(values, h):
    return np.gradient(values, h, edge_order=2)


def momentum_from_wavefunction(phi: SampledComplexFunction) -> SampledComplexFunction:
    """p~ = -i phi'/phi by second-order differences; near-zero nodes are flagged singular."""
    v = phi.values
    vmax = np.abs(v).max()
    if vmax == 0:
        raise AllZeroError("wavefunction vanishes identically")
    small = np.abs(v) < TOL_ZERO * vmax
    dv = _derivative(v, phi.grid.spacing)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = -1j * dv / v
    p[small] = np.inf
    return SampledComplexFunction(phi.grid, p, small)


def _mass_on(profile: MassProfile, grid: Grid):
    x = grid.nodes
    if not profile.contains(x):
        raise DomainError(f"grid [{grid.x_lo}, {grid.x_hi}] leaves the {profile.kind} domain")
    return mass_derivatives(profile, x)


def _terms(p, profile, veff, eps, dp):
    m, m1, _ = _mass_on(profile, p.grid)
    x = p.grid.nodes
    pv = p.values
    dpv = _derivative(pv, p.grid.spacing) if dp is None else np.asarray(dp, complex)
    return -1j * dpv, pv**2, 1j * (m1 / m) * pv, m * (veff(x) - _eps(eps))


def qemhj_residual(p: SampledComplexFunction, profile: MassProfile, veff: Callable, eps, dp=None) -> SampledComplexFunction:
    """-i p~' + p~^2 + i (M'/M) p~ + M (V_eff - eps) nodewise.

    ``dp`` optionally supplies p~' samples; otherwise centred differences are used.
    """
    t = _terms(p, profile, veff, eps, dp)
    return p.with_values(t[0] + t[1] + t[2] + t[3])


def qemhj_relative_residual(p, profile, veff, eps, dp=None) -> np.ndarray:
    """|residual| / (1 + sum of |terms|): a scale-free measure for wide dynamic ranges."""
    t = _terms(p, profile, veff, eps, dp)
    return np.abs(sum(t)) / (1.0 + sum(np.abs(s) for s in t))


def qhj_residual(p: SampledComplexFunction, U: Callable, eps) -> SampledComplexFunction:
    """Constant-mass QHJ residual p^2 - i p' - (eps - U)."""
    x = p.grid.nodes
    dp = _derivative(p.values, p.grid.spacing)
    return p.with_values(p.values**2 - 1j * dp - (_eps(eps) - U(x)))


def _half_log_derivative(profile, grid):
    m, m1, _ = _mass_on(profile, grid)
    return m1 / (2.0 * m)


def momentum_shift(p_tilde: SampledComplexFunction, profile: MassProfile) -> SampledComplexFunction:
    """p = p~ + i M'/(2M)."""
    return p_tilde.with_values(p_tilde.values + 1j * _half_log_derivative(profile, p_tilde.grid))


def momentum_unshift(p: SampledComplexFunction, profile: MassProfile) -> SampledComplexFunction:
    """p~ = p - i M'/(2M), the inverse of :func:`momentum_shift`."""
    return p.with_values(p.values - 1j * _half_log_derivative(profile, p.grid))


def wavefunction_from_momentum(p_tilde: SampledComplexFunction, profile: MassProfile):
    """Return (psi, phi) with phi = exp(i int p~) and psi = phi / sqrt(M), max |phi| = 1."""
    if p_tilde.has_singular:
        raise SingularNodeError("momentum has flagged poles; integrate between nodes instead")
    m, _, _ = _mass_on(profile, p_tilde.grid)
    expo = 1j * cumulative_trapezoid(p_tilde.values, p_tilde.grid.nodes, initial=0.0)
    expo -= expo.real.max()
    phi = np.exp(expo)
    phi /= np.abs(phi).max()
    psi = phi / np.sqrt(m)
    return p_tilde.with_values(psi), p_tilde.with_values(phi)


def riccati_coefficients(profile: MassProfile, veff: Callable, eps) -> RiccatiCoefficients:
    e = _eps(eps)

    def a(x):
        m = mass_derivatives(profile, x)[0]
        return -1j * m * (veff(x) - e)

    def b(x):
        m, m1, _ = mass_derivatives(profile, x)
        return m1 / m

    return RiccatiCoefficients(a, b, -1j, profile.domain)


def _step(x, domain):
    lo, hi = domain
    dist = min(x - lo, hi - x)
    return 1e-3 * min(1.0, dist) if np.isfinite(dist) else 1e-3


def G_from_coefficients(rc: RiccatiCoefficients, x: float) -> complex:
    """a c - b^2/4 + b'/2 with b' from a five-point central stencil; c is constant.

    The stencil step shrinks near a finite edge of ``rc.domain``.
    """
    h = _step(float(x), rc.domain)
    b = rc.b
    db = (b(x - 2 * h) - 8 * b(x - h) + 8 * b(x + h) - b(x + 2 * h)) / (12 * h)
    return complex(rc.a(x) * rc.c - b(x) ** 2 / 4 + db / 2)


def G_direct(profile: MassProfile, veff: Callable, eps, x):
    """-[4 M^3 (V_eff - eps) + 3 M'^2 - 2 M M''] / (4 M^2)."""
    profile.check(x)
    m, m1, m2 = mass_derivatives(profile, np.asarray(x, float))
    out = -(4 * m**3 * (veff(x) - _eps(eps)) + 3 * m1**2 - 2 * m * m2) / (4 * m**2)
    return float(out) if np.ndim(x) == 0 else out


def g_function(profile: MassProfile, veff: Callable, eps) -> Callable:
    """G as a callable without domain checks, usable at complex arguments."""
    e = _eps(eps)

    def G(z):
        m, m1, m2 = mass_derivatives(profile, z)
        return -m * (veff(z) - e) - 0.75 * (m1 / m) ** 2 + m2 / (2 * m)

    return G

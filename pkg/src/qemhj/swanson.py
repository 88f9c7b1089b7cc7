"""Generalised Swanson Hamiltonian in differential-operator form.

    H = -wb d/dx A^2 d/dx + b1 d/dx + c2,      wb = omega - alpha - beta

H is pseudo-Hermitian with metric eta = rho^2, rho = exp(-(1/2 wb) int b1/A^2 dx), and
h = rho H rho^-1 = -wb d/dx A^2 d/dx + V_eff is a position-dependent-mass Hamiltonian
with M = 1/(wb A^2).  Two ladder-function choices are solvable in closed form:

    ``sqrt_sinh``:   A = sqrt(sinh x / wb), B = 1/A           (hyperbolic family)
    ``exponential``: A = B = exp(x)/sqrt(wb)                  (exponential family)

Swanson couplings are named ``alpha_s``...``delta_s`` to keep them apart from the
von Roos ordering exponents carried by :class:`AmbiguityParams`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import brentq

from .errors import ConstraintError, DomainError, NegativeRadicandError, RootFindingError, UnboundError
from .profiles import AmbiguityParams, Grid, make_ambiguity
from .qhj_core import EnergyValue, RiccatiCoefficients
from .residue_spectra import (
    ClosedFormState,
    Factor,
    operator_relative_residual,
    pt_eigenfunction,
    pt_residues,
    morse_eigenfunction,
)

__all__ = [
    "SwansonParams",
    "MetricWeight",
    "SwansonEnergy",
    "swanson_b1_c2",
    "swanson_riccati",
    "swanson_G",
    "case_i_G",
    "case_ii_G",
    "similarity_map",
    "log_similarity_map",
    "case_i_eta",
    "case_ii_eta",
    "hermitian_counterpart_potential",
    "case_i_veff",
    "case_ii_veff",
    "case_i_parameter_map",
    "case_i_defect",
    "solve_case_i_omega",
    "case_i_eigenfunction",
    "case_ii_parameter_map",
    "case_ii_levels",
    "case_ii_eigenfunction",
    "assemble_psi",
    "swanson_matrix",
    "swanson_residual",
    "pseudo_hermiticity_check",
    "hermitized_imag_ratio",
]


@dataclass(frozen=True)
class SwansonParams:
    omega: float
    alpha_s: float
    beta_s: float
    gamma_s: float = 0.0
    delta_s: float = 0.0
    kind: str = "sqrt_sinh"
    custom: tuple | None = field(default=None, compare=False)
    custom_domain: tuple = (-np.inf, np.inf)

    def __post_init__(self):
        if self.kind not in ("sqrt_sinh", "exponential", "custom"):
            raise ValueError(f"unknown ladder-function kind {self.kind!r}")
        if not (self.omega > 0 and self.alpha_s > 0 and self.beta_s > 0):
            raise ValueError("omega, alpha_s and beta_s must be positive")
        if self.omega_bar == 0:
            raise ValueError("omega - alpha_s - beta_s must be nonzero")
        if self.kind != "custom" and self.omega_bar < 0:
            raise ValueError("the closed-form cases need omega - alpha_s - beta_s > 0")
        if self.kind == "custom" and (self.custom is None or len(self.custom) != 5):
            raise ValueError("custom kind needs callables (A, B, A', A'', B')")

    @classmethod
    def sqrt_sinh(cls, omega, alpha_s, beta_s, gamma_s=0.0, delta_s=0.0):
        return cls(float(omega), float(alpha_s), float(beta_s), float(gamma_s), float(delta_s), "sqrt_sinh")

    @classmethod
    def exponential(cls, omega, alpha_s, beta_s, gamma_s=0.0, delta_s=0.0):
        return cls(float(omega), float(alpha_s), float(beta_s), float(gamma_s), float(delta_s), "exponential")

    @property
    def omega_bar(self) -> float:
        return self.omega - self.alpha_s - self.beta_s

    @property
    def domain(self) -> tuple:
        if self.kind == "sqrt_sinh":
            return (0.0, np.inf)
        if self.kind == "exponential":
            return (-np.inf, np.inf)
        return self.custom_domain

    def funcs(self, x):
        """(A, A', A'', B, B') at x."""
        x = np.asarray(x, float)
        wb = self.omega_bar
        if self.kind == "sqrt_sinh":
            A = np.sqrt(np.sinh(x) / wb)
            A1 = np.cosh(x) / (2 * wb * A)
            A2 = (np.sinh(x) / (2 * wb) - A1**2) / A
            return A, A1, A2, 1.0 / A, -A1 / A**2
        if self.kind == "exponential":
            A = np.exp(x) / np.sqrt(wb)
            return A, A, A, A, A
        fA, fB, fA1, fA2, fB1 = self.custom
        return fA(x), fA1(x), fA2(x), fB(x), fB1(x)


@dataclass(frozen=True)
class MetricWeight:
    grid: Grid
    eta: np.ndarray = field(compare=False)

    def __post_init__(self):
        e = np.asarray(self.eta, float)
        if e.shape != (self.grid.n_points,) or not np.all(e > 0):
            raise ValueError("metric weight must be positive at every node")
        object.__setattr__(self, "eta", e)


@dataclass(frozen=True)
class SwansonEnergy:
    E: float

    def __post_init__(self):
        if not np.isfinite(self.E):
            raise ValueError("energy must be finite")


def _E(E) -> float:
    if isinstance(E, SwansonEnergy):
        return E.E
    if isinstance(E, EnergyValue):
        return E.epsilon
    return float(E)


def _b1_c2_derivs(sp: SwansonParams, x):
    A, A1, A2, B, B1 = sp.funcs(x)
    a, b, g, d, w = sp.alpha_s, sp.beta_s, sp.gamma_s, sp.delta_s, sp.omega
    b1 = (a - b) * A * (2 * B - A1) + (g - d) * A
    c2 = (
        (w + a + b) * B**2
        - (w + 2 * b) * A1 * B
        - (w - a + b) * A * B1
        + b * (A * A2 + A1**2)
        + (g + d) * B
        - d * A1
        + w / 2
    )
    db1 = (a - b) * (A1 * (2 * B - A1) + A * (2 * B1 - A2)) + (g - d) * A1
    return b1, c2, db1, A, A1, A2


def swanson_b1_c2(sp: SwansonParams, x):
    b1, c2, *_ = _b1_c2_derivs(sp, x)
    return b1, c2


def _nonzero_A(A):
    if np.any(A == 0):
        raise DomainError("ladder function A vanishes on the requested points")


def swanson_riccati(sp: SwansonParams, E) -> RiccatiCoefficients:
    """a = -i (c2 - E)/(wb A^2), b = (b1 - 2 wb A A')/(wb A^2), c = -i."""
    e, wb = _E(E), sp.omega_bar

    def a(x):
        b1, c2, _, A, _, _ = _b1_c2_derivs(sp, x)
        _nonzero_A(A)
        return -1j * (c2 - e) / (wb * A**2)

    def b(x):
        b1, _, _, A, A1, _ = _b1_c2_derivs(sp, x)
        _nonzero_A(A)
        return (b1 - 2 * wb * A * A1) / (wb * A**2)

    return RiccatiCoefficients(a, b, -1j, sp.domain)


def swanson_G(sp: SwansonParams, E, x):
    """-A''/A + b1'/(2 wb A^2) - (c2 - E)/(wb A^2) - b1^2/(4 wb^2 A^4)."""
    e, wb = _E(E), sp.omega_bar
    b1, c2, db1, A, _, A2 = _b1_c2_derivs(sp, x)
    _nonzero_A(A)
    return -A2 / A + db1 / (2 * wb * A**2) - (c2 - e) / (wb * A**2) - b1**2 / (4 * wb**2 * A**4)


def _require_kind(sp, kind):
    if sp.kind != kind:
        raise ValueError(f"this routine needs kind={kind!r}, got {sp.kind!r}")


def _case_i_coeffs(sp):
    """(V1, S, R): hyperbolic-family V_eff = omega/2 + V1 coth + S csch + R sinh."""
    a, b, w, wb = sp.alpha_s, sp.beta_s, sp.omega, sp.omega_bar
    V1 = -(w * (a + b) - 4 * a * b) / (2 * wb)
    S = w**2 - 4 * a * b + (a - b) ** 2 / (16 * wb**2)
    R = (a + b) / (4 * wb) + (a - b) ** 2 / (16 * wb**2)
    return V1, S, R


def case_i_G(sp: SwansonParams, E, variant: str = "corrected") -> Callable:
    """Closed csch/coth form of G for the hyperbolic family (gamma_s = delta_s = 0)."""
    _require_kind(sp, "sqrt_sinh")
    a, b, w, wb, e = sp.alpha_s, sp.beta_s, sp.omega, sp.omega_bar, _E(E)
    V1, S, R = _case_i_coeffs(sp)
    const = -(a**2 + (b - 2 * w) ** 2 - 2 * a * (b + 2 * w)) / (16 * wb**2)
    if variant == "corrected":
        k_cs, k_cc, k_cs2 = -(w / 2 - e), -V1, -(S - 0.25)
    elif variant == "printed":
        k_cs = -(w - 2 * e) / (2 * wb)
        k_cc = (w * (a + b) - 4 * a * b) / (2 * wb**2)
        k_cs2 = -((a - b) ** 2 / (16 * wb**2) + w**2 - 4 * a * b - 0.25)
    else:
        raise ValueError(f"unknown variant {variant!r}")

    def G(x):
        cs = 1.0 / np.sinh(x)
        return const + k_cs * cs + k_cc * cs / np.tanh(x) + k_cs2 * cs**2

    return G


def _case_ii_coeffs(sp):
    a, b, g, d, w, wb = sp.alpha_s, sp.beta_s, sp.gamma_s, sp.delta_s, sp.omega, sp.omega_bar
    C0 = w / 2 + (g - d) ** 2 / (4 * wb)
    L = (2 * (a * d + b * g) - w * (g + d)) / (2 * wb**1.5)
    mu = abs(a - b) / (2 * wb)
    return C0, L, mu


def case_ii_G(sp: SwansonParams, E, variant: str = "corrected") -> Callable:
    """Closed exponential form of G for the exponential family.

    The corrected e^{-2x} coefficient is E - C0 with C0 = omega/2 + (gamma-delta)^2/(4 wb);
    the ``printed`` variant carries the opposite sign.
    """
    _require_kind(sp, "exponential")
    a, b, wb, e = sp.alpha_s, sp.beta_s, sp.omega_bar, _E(E)
    C0, L, _ = _case_ii_coeffs(sp)
    k2 = e - C0 if variant == "corrected" else -e + C0
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    return lambda x: -((a - b) ** 2) / (4 * wb**2) + L * np.exp(-x) + k2 * np.exp(-2 * x)


def _integrand(sp, x):
    b1, _, _, A, _, _ = _b1_c2_derivs(sp, x)
    return b1 / (sp.omega_bar * A**2)


def _midpoint_cumulative(sp, x, substeps):
    """int from x[0] of b1/(wb A^2) at every node: trapezoid on a refined mesh."""
    m = substeps
    fine = np.concatenate([np.linspace(x[i], x[i + 1], m + 1)[:-1] for i in range(len(x) - 1)] + [x[-1:]])
    c = cumulative_trapezoid(_integrand(sp, fine), fine, initial=0.0)
    return c[::m]


def log_similarity_map(sp: SwansonParams, grid: Grid, substeps: int = 8) -> np.ndarray:
    """log rho = -(1/2) int b1/(wb A^2), zero at the midpoint node.

    Trapezoid sums with ``substeps`` and twice as many sub-intervals per grid cell are
    combined by one Richardson step, leaving an O(h^4) quadrature error.
    """
    x = grid.nodes
    lo, hi = sp.domain
    if not (x[0] > lo and x[-1] < hi):
        raise DomainError("grid leaves the ladder-function domain")
    t1 = _midpoint_cumulative(sp, x, substeps)
    t2 = _midpoint_cumulative(sp, x, 2 * substeps)
    log_rho = -0.5 * (4 * t2 - t1) / 3
    return log_rho - log_rho[grid.mid_index]


def similarity_map(sp: SwansonParams, grid: Grid, substeps: int = 8):
    """(rho, eta = rho^2) from :func:`log_similarity_map`, both 1 at the midpoint node."""
    rho = np.exp(log_similarity_map(sp, grid, substeps))
    return rho, MetricWeight(grid, rho**2)


def _mid_normalize(v, grid):
    return v / v[grid.mid_index]


def case_i_eta(sp: SwansonParams, x, variant: str = "corrected"):
    """sinh(x)^p tanh(x/2)^(-2(alpha-beta)); p = (alpha-beta)/(2 wb) (printed: (alpha-beta)/wb)."""
    d, wb = sp.alpha_s - sp.beta_s, sp.omega_bar
    p = d / (2 * wb) if variant == "corrected" else d / wb
    x = np.asarray(x, float)
    return np.sinh(x) ** p * np.tanh(x / 2) ** (-2 * d)


def case_ii_eta(sp: SwansonParams, x):
    d, wb = sp.alpha_s - sp.beta_s, sp.omega_bar
    x = np.asarray(x, float)
    return np.exp(-d / wb * x + (sp.gamma_s - sp.delta_s) / np.sqrt(wb) * np.exp(-x))


def hermitian_counterpart_potential(sp: SwansonParams, x, route: str = "display"):
    """V_eff of h = rho H rho^-1.

    ``display``: the expanded ladder-function formula.
    ``direct``: c2 - b1'/2 + b1^2/(4 wb A^2), from conjugating the operator.
    """
    A, A1, A2, B, B1 = sp.funcs(x)
    a, b, g, d, wb = sp.alpha_s, sp.beta_s, sp.gamma_s, sp.delta_s, sp.omega_bar
    if route == "direct":
        b1, c2, db1, *_ = _b1_c2_derivs(sp, x)
        return c2 - db1 / 2 + b1**2 / (4 * wb * A**2)
    if route != "display":
        raise ValueError(f"unknown route {route!r}")
    k = (a - b) ** 2 / wb
    return (
        (k + wb + 2 * (a + b)) * B * (B - A1)
        - (wb + a + b) * A * B1
        + 0.5 * (a + b) * A * A2
        + 0.25 * (k + 2 * (a + b)) * A1**2
        + ((a - b) * (g - d) / wb + g + d) * (B - A1 / 2)
        + (g - d) ** 2 / (4 * wb)
        + (wb + a + b) / 2
    )


def case_i_veff(sp: SwansonParams, variant: str = "corrected") -> Callable:
    """Closed hyperbolic form of V_eff.

    corrected: omega/2 + V1 coth + S csch + R sinh.
    printed: V1' coth + k coth csch + (omega^2 - 4ab) csch + (a+b)/(4 wb) sinh,
    where V1' has +4ab and no constant term appears.
    """
    _require_kind(sp, "sqrt_sinh")
    a, b, w, wb = sp.alpha_s, sp.beta_s, sp.omega, sp.omega_bar
    V1, S, R = _case_i_coeffs(sp)
    if variant == "corrected":
        return lambda x: w / 2 + V1 / np.tanh(x) + S / np.sinh(x) + R * np.sinh(x)

    def printed(x):
        cs = 1.0 / np.sinh(x)
        return (
            -(w * (a + b) + 4 * a * b) / (2 * wb) / np.tanh(x)
            + (a - b) ** 2 / (16 * wb**2) * cs / np.tanh(x)
            + (w**2 - 4 * a * b) * cs
            + (a + b) / (4 * wb) * np.sinh(x)
        )

    return printed


def case_ii_veff(sp: SwansonParams) -> Callable:
    _require_kind(sp, "exponential")
    a, b, g, d, w, wb = sp.alpha_s, sp.beta_s, sp.gamma_s, sp.delta_s, sp.omega, sp.omega_bar
    c0 = ((g - d) ** 2 + 2 * w * wb) / (4 * wb)
    c1 = ((a - b) * (g - d) / wb + g + d) / (2 * np.sqrt(wb))
    c2 = -1 + (a - b) ** 2 / (4 * wb**2)
    return lambda x: c0 + c1 * np.exp(x) + c2 * np.exp(2 * x)


class CaseIMap(NamedTuple):
    A: float
    B: float
    V1: float
    V2: float
    V3: float
    epsilon: float
    amb: AmbiguityParams | None
    S: float
    R: float


def case_i_parameter_map(sp: SwansonParams, n: int = 0, variant: str = "corrected",
                         amb: AmbiguityParams | None = None, branch=None) -> CaseIMap:
    """Hyperbolic-family parameters of the equivalent position-dependent-mass problem.

    corrected: V1 as printed, V2 = omega/2 = epsilon = E, von Roos pair
    (sqrt S, -1 - 2 sqrt S) so that alpha(alpha+beta+1) = -S, V3 = R - sqrt S - S, and
    (A, B) from the residues of level n (``branch`` as in :func:`pt_residues`).
    printed: the rational A, B in (omega, alpha, beta), V2 = omega, epsilon = 2E = omega,
    V3 with the caller's von Roos beta (default -1).
    """
    _require_kind(sp, "sqrt_sinh")
    if sp.gamma_s != 0 or sp.delta_s != 0:
        raise ConstraintError("the hyperbolic family needs gamma_s = delta_s = 0")
    a, b, w, wb = sp.alpha_s, sp.beta_s, sp.omega, sp.omega_bar
    V1, S, R = _case_i_coeffs(sp)
    if variant == "printed":
        den = 2 * a * (a + b - w) ** 2
        A = -((a + b) * (a + b - w * 3) + w**2 + 4 * a * b) / den
        B = -((a + b) ** 2 - w * (a + b) * (a + 3) + w**2 + 4 * (a - 1) * a * b) / den
        vb = -1.0 if amb is None else amb.beta
        V3 = (a**2 + (b - 2 * w) ** 2 - 2 * a * (b + 2 * w)) / (16 * wb**2) + 0.25 + (vb + 1) / 2
        return CaseIMap(A, B, V1, w, V3, w, amb, S, R)
    if variant != "corrected":
        raise ValueError(f"unknown variant {variant!r}")
    if S < 0:
        raise NegativeRadicandError(f"csch coefficient S={S} < 0 admits no real ordering")
    rS = np.sqrt(S)
    vr = make_ambiguity(rS, -1.0 - 2.0 * rS)
    res = pt_residues(V1, vr, branch, n)
    bp, bm = res[0].value, res[1].value
    return CaseIMap(0.5 - bp - bm, bp - bm, V1, w / 2, R - rS - S, w / 2, vr, S, R)


def case_i_defect(sp: SwansonParams, n: int, branch=None) -> float:
    """R - [(A - n)^2 - 1/4]; zero exactly when level n sits at E = omega/2."""
    m = case_i_parameter_map(sp, n, branch=branch)
    return m.R - ((m.A - n) ** 2 - 0.25)


def solve_case_i_omega(alpha_s: float, beta_s: float, n: int = 1, branch=("+", "-"),
                       bracket=(None, 50.0), samples: int = 4000) -> float:
    """Smallest omega > alpha_s + beta_s that zeroes :func:`case_i_defect` for level n.

    The residue branch is held fixed during the search.  With positive couplings no
    omega makes the level square integrable at both ends; the roots found here give
    exact solutions of H Psi = (omega/2) Psi that are bounded at the origin only.
    """
    base = alpha_s + beta_s
    lo = base + 1e-6 if bracket[0] is None else bracket[0]
    grid = base + np.geomspace(lo - base, bracket[1] - base, samples)

    def f(w):
        try:
            return case_i_defect(SwansonParams.sqrt_sinh(w, alpha_s, beta_s), n, branch)
        except (ValueError, ArithmeticError):
            return np.nan

    vals = np.array([f(w) for w in grid])
    for i in range(samples - 1):
        if np.isfinite(vals[i]) and np.isfinite(vals[i + 1]) and vals[i] * vals[i + 1] < 0:
            return float(brentq(f, grid[i], grid[i + 1], xtol=1e-14, rtol=1e-14))
    raise RootFindingError(f"no omega in [{lo}, {bracket[1]}] quantises level {n}")


def _inverse_rho_factors_i(sp):
    d, wb = sp.alpha_s - sp.beta_s, sp.omega_bar
    return d / 2 - d / (8 * wb), -d / 2 - d / (8 * wb)


def case_i_eigenfunction(sp: SwansonParams, n: int, variant: str = "corrected", branch=None,
                         require_bounded: bool = True) -> ClosedFormState:
    """Psi_n of H for the hyperbolic family, in y = cosh x.

    corrected: rho^-1 phi_n with phi_n the position-dependent-mass level of the map.
    printed: the alternative display, whose exponents drop the -1/4 of phi.
    Raises :class:`ConstraintError` when Psi_n would blow up at the origin, unless
    ``require_bounded`` is False (formal solutions are still exact away from it).
    """
    m = case_i_parameter_map(sp, n, variant, branch=branch)
    r1, r2 = _inverse_rho_factors_i(sp)
    d, wb = sp.alpha_s - sp.beta_s, sp.omega_bar
    if variant == "printed":
        A, B = m.A, m.B
        e1 = (B - A) / 2 - d * (1 - 4 * wb) / (8 * wb)
        e2 = -(B + A) / 2 - d * (1 + 4 * wb) / (8 * wb)
        if require_bounded and not B - A > d * (1 - 4 * wb) / (8 * wb):
            raise ConstraintError("constraint B - A > (alpha-beta)(1-4 wb)/(8 wb) violated")
        params = (B - A - 0.5, -B - A - 0.5)
        meta = {"case": "swanson_i", "variant": "printed"}
    else:
        phi = pt_eigenfunction(m.V1, m.amb, n, branch=branch)
        e1 = phi.factors[0].exponent + r1
        e2 = phi.factors[1].exponent + r2
        params = phi.poly_params
        if require_bounded and e1 < 0:
            raise ConstraintError(f"Psi_{n} exponent {e1:.6g} at the origin is negative (state unbounded)")
        meta = {"case": "swanson_i", "variant": "corrected", "defect": case_i_defect(sp, n, branch), "E": sp.omega / 2}
    return ClosedFormState(int(n), (Factor(1.0, e1), Factor(-1.0, e2)), "jacobi", params, "cosh", 1.0,
                           (1.0, np.inf), meta)


class CaseIIMap(NamedTuple):
    A: float
    B: float
    V0: float
    epsilon: float
    E: float
    mu: float
    L: float
    C0: float
    amb: AmbiguityParams


def case_ii_parameter_map(sp: SwansonParams, E, variant: str = "corrected",
                          amb: AmbiguityParams | None = None) -> CaseIIMap:
    """Exponential-family parameters of the equivalent problem at Swanson energy E.

    corrected: B = sqrt(C0 - E), A = -1/2 + L/(2B), position-dependent-mass energy E - C0 = -B^2.
    printed: B = sqrt(E - omega/2 + (gamma-delta)^2/(4 wb)), A without the omega factor,
    epsilon = E.
    V0 = 2(b~+1) + 4 a~(a~+b~+1) - 1 + mu^2 with mu = |alpha-beta|/(2 wb) either way.
    """
    _require_kind(sp, "exponential")
    e = _E(E)
    amb = make_ambiguity(0.0, -1.0) if amb is None else amb
    a, b, g, d, w, wb = sp.alpha_s, sp.beta_s, sp.gamma_s, sp.delta_s, sp.omega, sp.omega_bar
    C0, L, mu = _case_ii_coeffs(sp)
    V0 = 2 * (amb.beta + 1) + 4 * amb.q - 1 + mu**2
    if variant == "corrected":
        rad, num, eps = C0 - e, L, e - C0
    elif variant == "printed":
        rad = e - w / 2 + (g - d) ** 2 / (4 * wb)
        num = (2 * (b * g + a * d) - (d + g)) / (2 * wb**1.5)
        eps = e
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if rad < 0:
        raise NegativeRadicandError(f"B^2 = {rad:.6g} < 0 at E = {e}")
    B = np.sqrt(rad)
    A = -0.5 + num / (2 * B) if B > 0 else np.inf
    return CaseIIMap(A, B, V0, eps, e, mu, L, C0, amb)


def case_ii_levels(sp: SwansonParams, n_max: int):
    """Swanson energies E_n = C0 - B_n^2 with B_n = L/(2n + 1 + 2 mu) for n <= n_max."""
    _require_kind(sp, "exponential")
    C0, L, mu = _case_ii_coeffs(sp)
    if L <= 0:
        raise UnboundError(f"no bound states: e^-x coefficient L = {L:.6g} must be positive")
    return [C0 - (L / (2 * n + 1 + 2 * mu)) ** 2 for n in range(n_max + 1)]


def case_ii_eigenfunction(sp: SwansonParams, n: int, variant: str = "corrected") -> ClosedFormState:
    """Psi_n = y^(A-n+1-(alpha-beta)/(2wb)) exp((-B - (gamma-delta)/(2 sqrt wb)) y) L_n^(2(A-n))(2By).

    y = exp(-x), A = n + mu, B = B_n.  ``printed`` drops the +1 in the power.
    """
    E = case_ii_levels(sp, n)[n]
    m = case_ii_parameter_map(sp, E)
    if not m.A > n:
        raise UnboundError(f"bound-state condition A > n violated (A={m.A}, n={n})")
    d, wb = sp.alpha_s - sp.beta_s, sp.omega_bar
    phi = morse_eigenfunction(m.A, m.B, n)
    power = phi.factors[0].exponent - d / (2 * wb)
    if variant == "printed":
        power -= 1.0
    elif variant != "corrected":
        raise ValueError(f"unknown variant {variant!r}")
    expo = phi.factors[1].exponent - (sp.gamma_s - sp.delta_s) / (2 * np.sqrt(wb))
    return ClosedFormState(int(n), (Factor(0.0, power), Factor(None, expo)), "laguerre", phi.poly_params,
                           "exp_neg", phi.scale, (0.0, np.inf),
                           {"case": "swanson_ii", "variant": variant, "E": E, "B": m.B, "A": m.A})


def assemble_psi(sp: SwansonParams, grid: Grid, chi_values) -> np.ndarray:
    """Psi = rho^-1 chi on a grid, rho from :func:`similarity_map`; midpoint value set to 1."""
    rho, _ = similarity_map(sp, grid)
    psi = np.asarray(chi_values) / rho
    return psi / psi[grid.mid_index]


def swanson_matrix(sp: SwansonParams, grid: Grid) -> np.ndarray:
    """Dense matrix of H on the interior nodes, Dirichlet ends.

    -wb (A^2 u')' uses the conservative three-point form with A^2 at half nodes (exactly
    symmetric in the Hermitian limit); b1 u' uses centred differences.
    """
    x = grid.nodes
    lo, hi = sp.domain
    if not (x[0] > lo and x[-1] < hi):
        raise DomainError("grid leaves the ladder-function domain")
    h = grid.spacing
    wb = sp.omega_bar
    b1, c2, *_ = _b1_c2_derivs(sp, x)
    a2 = sp.funcs(0.5 * (x[1:] + x[:-1]))[0] ** 2
    n = grid.n_points - 2
    i = np.arange(n)
    H = np.zeros((n, n))
    H[i, i] = wb * (a2[:-1] + a2[1:]) / h**2 + c2[1:-1]
    H[i[:-1], i[:-1] + 1] = -wb * a2[1:-1] / h**2 + b1[1:-2] / (2 * h)
    H[i[1:], i[1:] - 1] = -wb * a2[1:-1] / h**2 - b1[2:-1] / (2 * h)
    return H


def swanson_residual(sp: SwansonParams, state: ClosedFormState, E, x) -> np.ndarray:
    """Pointwise relative residual of H Psi = E Psi for a closed-form Psi."""
    e, wb = _E(E), sp.omega_bar
    b1, c2, _, A, A1, _ = _b1_c2_derivs(sp, x)
    return operator_relative_residual(state, x, -wb * A**2, b1 - 2 * wb * A * A1, c2 - e)


def pseudo_hermiticity_check(sp: SwansonParams, grid: Grid) -> float:
    """max |D_eta H D_eta^-1 - H^T| / max |H| over the interior block."""
    H = swanson_matrix(sp, grid)
    _, metric = similarity_map(sp, grid)
    eta = metric.eta[1:-1]
    D = eta[:, None] * H / eta[None, :] - H.T
    return float(np.abs(D).max() / np.abs(H).max())


def hermitized_imag_ratio(sp: SwansonParams, grid: Grid) -> float:
    """max |Im lambda| / spectral radius for the eigenvalues of rho H rho^-1."""
    H = swanson_matrix(sp, grid)
    rho, _ = similarity_map(sp, grid)
    r = rho[1:-1]
    ev = np.linalg.eigvals(r[:, None] * H / r[None, :])
    return float(np.abs(ev.imag).max() / np.abs(ev).max())

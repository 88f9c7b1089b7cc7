"""Residue quantization and closed-form states for the two solvable mass profiles.

Hyperbolic case: M = 1/sinh x on (0, inf) with V = V1 coth x + V2 + V3 sinh x, mapped to
y = cosh x.  Exponential case: M = exp(-2x) with V = V0 exp(2x) - B(2A+1) exp(x), mapped
to y = exp(-x).

Most hyperbolic-case routines take ``variant``: ``"corrected"`` (default) uses formulas
re-derived from the effective potential and confirmed by residual checks;
``"printed"`` reproduces the alternative closed forms kept for comparison (their
radicands carry an extra +1 and the Jacobi parameters are asymmetric).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BranchError,
    ConstraintError,
    PositiveEnergyError,
    QuadratureError,
    RootFindingError,
    UnboundError,
)
from .polynomials import (
    eval_jacobi,
    eval_laguerre,
    jacobi_coefficients,
    jacobi_derivative,
    laguerre_coefficients,
    laguerre_derivative,
)
from .profiles import AmbiguityParams, MassProfile, PotentialSpec, mass_derivatives, veff_function

__all__ = [
    "Branch",
    "ResidueData",
    "Factor",
    "ClosedFormState",
    "SpectralCondition",
    "pt_residues",
    "pt_select_branch",
    "pt_quantization",
    "pt_closure",
    "pt_eigenfunction",
    "pt_AB_params",
    "pt_G",
    "pt_U",
    "morse_C",
    "morse_residues",
    "morse_infinity_expansion",
    "morse_quantization",
    "morse_eigenfunction",
    "morse_G",
    "calibrate_morse_scale",
    "laurent_coefficients",
    "pdm_relative_residual",
    "operator_relative_residual",
]


class Branch(Enum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, b) -> "Branch":
        if isinstance(b, Branch):
            return b
        s = str(b).strip().lower()
        if s in ("+", "plus", "p", "1", "+1"):
            return cls.PLUS
        if s in ("-", "minus", "m", "-1"):
            return cls.MINUS
        raise ValueError(f"unknown branch {b!r}")

    @property
    def symbol(self) -> str:
        return "+" if self is Branch.PLUS else "-"


@dataclass(frozen=True)
class ResidueData:
    location: complex
    value: complex
    branch: Branch


@dataclass(frozen=True)
class Factor:
    """(y - center)**exponent, or exp(exponent * y) when ``center`` is None."""

    center: float | None
    exponent: float


_MAPS = {
    "cosh": (np.cosh, np.sinh, np.cosh),
    "exp_neg": (lambda x: np.exp(-x), lambda x: -np.exp(-x), lambda x: np.exp(-x)),
}


@dataclass(frozen=True)
class ClosedFormState:
    """Recipe for prefactor(y) * poly(scale * y) with y = arg_map(x).

    Evaluation happens in log space so that states spanning many decades stay finite.
    """

    n: int
    factors: tuple
    poly: str
    poly_params: tuple
    arg_map: str
    scale: float = 1.0
    physical: tuple = (-np.inf, np.inf)
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.poly not in ("jacobi", "laguerre"):
            raise ValueError(f"unknown polynomial family {self.poly!r}")
        if self.arg_map not in _MAPS:
            raise ValueError(f"unknown argument map {self.arg_map!r}")
        if not all(np.isfinite(f.exponent) for f in self.factors):
            raise ValueError("prefactor exponents must be finite")

    # argument map
    def y(self, x):
        return _MAPS[self.arg_map][0](x)

    def dy(self, x):
        return _MAPS[self.arg_map][1](x)

    def d2y(self, x):
        return _MAPS[self.arg_map][2](x)

    # polynomial factor and its y-derivatives, argument scale included
    def poly_value(self, y, order: int = 0):
        u = self.scale * np.asarray(y)
        if self.poly == "jacobi":
            a, b = self.poly_params
            v = eval_jacobi(self.n, a, b, u) if order == 0 else jacobi_derivative(self.n, a, b, u, order)
        else:
            (k,) = self.poly_params
            v = eval_laguerre(self.n, k, u) if order == 0 else laguerre_derivative(self.n, k, u, order)
        return self.scale**order * v

    def _prefactor_dlog(self, y):
        L = 0.0
        Ly = 0.0
        for f in self.factors:
            if f.center is None:
                L = L + f.exponent
            else:
                L = L + f.exponent / (y - f.center)
                Ly = Ly - f.exponent / (y - f.center) ** 2
        return L, Ly

    def log_abs(self, x):
        """(log|phi(x)|, sign) for real x in the physical region."""
        y = self.y(np.asarray(x, float))
        logv = np.zeros_like(y)
        for f in self.factors:
            logv += f.exponent * (y if f.center is None else np.log(np.abs(y - f.center)))
        p = self.poly_value(y)
        with np.errstate(divide="ignore"):
            logv = logv + np.log(np.abs(p))
        return logv, np.sign(p)

    def __call__(self, x, normalize: bool = True):
        logv, sgn = self.log_abs(x)
        if normalize:
            logv = logv - np.max(logv[np.isfinite(logv)])
        return sgn * np.exp(logv)

    def dlog(self, z):
        """phi'/phi at real or complex z (meromorphic away from prefactor centres)."""
        y = self.y(z)
        L, _ = self._prefactor_dlog(y)
        return self.dy(z) * (L + self.poly_value(y, 1) / self.poly_value(y))

    def momentum(self, z):
        """p~ = -i phi'/phi."""
        return -1j * self.dlog(z)

    def momentum_derivative(self, x):
        """d p~/dx = -i (phi''/phi - (phi'/phi)^2)."""
        P, l1, l2 = self.multiplied_ratios(x)
        return -1j * (l2 / P - (l1 / P) ** 2)

    def multiplied_ratios(self, x):
        """(P, P phi'/phi, P phi''/phi): finite even at zeros of the polynomial factor."""
        y = self.y(x)
        y1, y2 = self.dy(x), self.d2y(x)
        L, Ly = self._prefactor_dlog(y)
        P = self.poly_value(y)
        Q = self.poly_value(y, 1)
        Qd = self.poly_value(y, 2)
        l1 = y1 * (L * P + Q)
        l2 = y1**2 * (L * L * P + 2 * L * Q + Qd + Ly * P) + y2 * (L * P + Q)
        return P, l1, l2

    def poly_zeros_y(self, tol: float = 1e-7) -> np.ndarray:
        """Real zeros of the polynomial factor, in the mapped variable y."""
        if self.n == 0:
            return np.zeros(0)
        if self.poly == "jacobi":
            c = jacobi_coefficients(self.n, *self.poly_params)
        else:
            c = laguerre_coefficients(self.n, *self.poly_params)
        if not np.all(np.isfinite(c)) or c[-1] == 0:
            raise RootFindingError("degenerate leading coefficient")
        r = np.polynomial.polynomial.polyroots(c) / self.scale
        bad = np.abs(r.imag) > tol * (1 + np.abs(r.real))
        if bad.any():
            raise RootFindingError(f"{bad.sum()} complex zeros for a degree-{self.n} state")
        return np.sort(r.real)


def operator_relative_residual(state: ClosedFormState, x, c2, c1, c0) -> np.ndarray:
    """|c2 phi'' + c1 phi' + c0 phi| / (|c2 phi''| + |c1 phi'| + |c0 phi|), pointwise.

    Every term is divided by the prefactor, so the measure is independent of scale.
    """
    P, l1, l2 = state.multiplied_ratios(np.asarray(x, float))
    t = (c2 * l2, c1 * l1, c0 * P)
    den = np.abs(t[0]) + np.abs(t[1]) + np.abs(t[2])
    return np.abs(t[0] + t[1] + t[2]) / np.where(den > 0, den, 1.0)


def pdm_relative_residual(state: ClosedFormState, profile: MassProfile, veff: Callable, eps: float, x) -> np.ndarray:
    """Relative residual of -(phi'/M)' + (V_eff - eps) phi = 0 for a closed-form phi."""
    x = np.asarray(x, float)
    profile.check(x)
    m, m1, _ = mass_derivatives(profile, x)
    return operator_relative_residual(state, x, -1.0 / m, m1 / m**2, veff(x) - eps)


@dataclass(frozen=True)
class SpectralCondition:
    case: str
    inputs: dict
    n: int
    output_parameter: float
    energy: float
    residues: tuple = ()
    branch: tuple = ()
    meta: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------- hyperbolic case

def _check_variant(variant):
    if variant not in ("corrected", "printed"):
        raise ValueError(f"variant must be 'corrected' or 'printed', got {variant!r}")


def _pt_radicands(V1, amb: AmbiguityParams, variant):
    _check_variant(variant)
    shift = 1.0 if variant == "printed" else 0.0
    d1, d2 = V1 - amb.q + shift, -V1 - amb.q + shift
    if d1 < 0 or d2 < 0:
        raise BranchError(
            f"negative residue radicand ({d1:.6g}, {d2:.6g}) for V1={V1}, alpha(alpha+beta+1)={amb.q}"
        )
    return np.sqrt(d1), np.sqrt(d2)


def _pt_values(V1, amb, branches, variant):
    r1, r2 = _pt_radicands(V1, amb, variant)
    s1, s2 = (Branch.parse(b).value for b in branches)
    return 0.5 * (1 + s1 * r1), 0.5 * (1 + s2 * r2)


_PT_ORDER = (
    (Branch.MINUS, Branch.MINUS),
    (Branch.PLUS, Branch.MINUS),
    (Branch.MINUS, Branch.PLUS),
    (Branch.PLUS, Branch.PLUS),
)


def pt_select_branch(V1: float, amb: AmbiguityParams, n: int = 0):
    """Branch pair (y=1, y=-1) whose state is square integrable for level n.

    phi behaves as x**(2 b_+ - 1) at the mass pole and exp(N x) at infinity with
    N = n + b_+ + b_- - 1; the first pair (Minus first) with a finite value at the
    pole and N < 0 wins.  When none qualifies the Minus pair is returned.
    """
    for pair in _PT_ORDER:
        bp, bm = _pt_values(V1, amb, pair, "corrected")
        if 2 * bp - 1 >= -1e-14 and n + bp + bm - 1 < 0:
            return pair
    return _PT_ORDER[0]


def _pt_branch(V1, amb, n, branch, variant):
    if branch is None:
        return _PT_ORDER[0] if variant == "printed" else pt_select_branch(V1, amb, n)
    if isinstance(branch, (str, Branch)):
        b = Branch.parse(branch)
        return (b, b)
    return tuple(Branch.parse(b) for b in branch)


def pt_residues(V1: float, amb: AmbiguityParams, branch=None, n: int = 0, variant: str = "corrected"):
    """Residues of zeta = d/dy log(phi sinh x) at y = 1 and y = -1."""
    pair = _pt_branch(V1, amb, n, branch, variant)
    bp, bm = _pt_values(V1, amb, pair, variant)
    return ResidueData(1.0, bp, pair[0]), ResidueData(-1.0, bm, pair[1])


def pt_quantization(
    V1: float,
    amb: AmbiguityParams,
    n: int,
    V2: float = 0.0,
    eps: float | None = None,
    branch=None,
    variant: str = "corrected",
) -> SpectralCondition:
    """V3 that makes level n solvable at energy eps = V2.

    The simple pole of G at the origin has coefficient eps - V2; it must vanish, so an
    explicit ``eps`` different from ``V2`` raises :class:`ConstraintError`.
    """
    if eps is not None and abs(eps - V2) > 0:
        raise ConstraintError(f"simple-pole constraint V2=epsilon violated (V2={V2}, epsilon={eps})")
    if int(n) != n or n < 0:
        raise ValueError("n must be a non-negative integer")
    res = pt_residues(V1, amb, branch, n, variant)
    bp, bm = res[0].value, res[1].value
    if variant == "corrected":
        N = n + bp + bm - 1
        V3 = N * (N + 1) + 0.5 * (amb.beta + 1) + amb.q
    else:
        R1, R2 = _pt_radicands(V1, amb, "printed")
        A = 0.5 * (-1 + R2 + R1)
        g = -0.5 * (amb.beta + 1) - 0.25 + 0.25 * (-1 + R2 + R1) ** 2
        V3 = g**2 - (A - n) ** 2
    return SpectralCondition(
        "PT",
        {"V1": V1, "V2": V2, "alpha": amb.alpha, "beta": amb.beta, "variant": variant},
        int(n),
        float(V3),
        float(V2),
        res,
        (res[0].branch, res[1].branch),
    )


def pt_closure(cond: SpectralCondition, amb: AmbiguityParams, variant: str = "corrected") -> float:
    """Coefficient of y**-2 at infinity; vanishes for consistent (residues, n, V3)."""
    bp, bm = cond.residues[0].value, cond.residues[1].value
    n, V3 = cond.n, cond.output_parameter
    base = 2 * bp * bm + 2 * n * (bp + bm) + n * (n - 1)
    if variant == "corrected":
        return float(base + 0.5 * (amb.q + amb.beta) - V3)
    return float(base + 3.0 / 8.0 - V3 - amb.q)


def pt_eigenfunction(
    V1: float,
    amb: AmbiguityParams,
    n: int,
    target: str = "phi",
    branch=None,
    variant: str = "corrected",
) -> ClosedFormState:
    """Closed-form level n in y = cosh x.

    phi = (y-1)^(b_+ - 1/2) (y+1)^(b_- - 1/2) P_n^(2b_+ - 1, 2b_- - 1)(y) and
    psi = phi / sqrt(M) carries an extra (y^2 - 1)^(1/4).
    """
    if target not in ("phi", "psi"):
        raise ValueError("target must be 'phi' or 'psi'")
    if variant == "corrected":
        res = pt_residues(V1, amb, branch, n, variant)
        bp, bm = res[0].value, res[1].value
        e1, e2 = bp - 0.5, bm - 0.5
        params = (2 * bp - 1, 2 * bm - 1)
        shift = 0.25 if target == "psi" else 0.0
        branches = (res[0].branch, res[1].branch)
    else:
        R1, R2 = _pt_radicands(V1, amb, "printed")
        a1 = 0.25 * (1 - 2 * R2 + R1)
        a2 = 0.25 * (-1 + 2 * R1 + R1)
        e1, e2 = a1 - 0.75, a2 - 0.75
        params = (2 * a1 - 1.5, -2 * a2 - 1.5)
        shift = 0.25 if target == "psi" else 0.0
        branches = ()
    return ClosedFormState(
        int(n),
        (Factor(1.0, e1 + shift), Factor(-1.0, e2 + shift)),
        "jacobi",
        params,
        "cosh",
        1.0,
        (1.0, np.inf),
        {"case": "PT", "target": target, "variant": variant, "branch": branches},
    )


def pt_AB_params(V1: float, amb: AmbiguityParams, branch=None, n: int = 0, variant: str = "corrected"):
    """(A, B) of A^2 + (B^2 + A^2 + A) csch^2 - B(2A+1) coth csch matching -G."""
    if variant == "printed":
        R1, R2 = _pt_radicands(V1, amb, "printed")
        return 0.5 * (-1 + R2 + R1), 0.5 * (R1 - R2)
    res = pt_residues(V1, amb, branch, n, variant)
    bp, bm = res[0].value, res[1].value
    return 0.5 - bp - bm, bp - bm


def pt_U(A: float, B: float) -> Callable:
    def U(x):
        cs = 1.0 / np.sinh(x)
        return A**2 + (B**2 + A**2 + A) * cs**2 - B * (2 * A + 1) * cs / np.tanh(x)

    return U


def pt_G(V1, V2, V3, amb: AmbiguityParams, eps, variant: str = "corrected") -> Callable:
    """G of the hyperbolic case as a callable (complex-safe)."""
    _check_variant(variant)
    q = amb.q
    if variant == "corrected":
        const = V3 - 0.5 * (amb.beta + 1) - q + 0.25
    else:
        const = V3 + 0.5 * (amb.beta + 1) + 0.25

    def G(z):
        cs = 1.0 / np.sinh(z)
        minus_g = V1 * cs / np.tanh(z) - (q + 0.25) * cs**2 + (V2 - eps) * cs + const
        return -minus_g

    return G


# --------------------------------------------------------------- exponential case

def morse_C(amb: AmbiguityParams) -> float:
    return 2 * (amb.beta + 1) + 4 * amb.q - 1


def morse_residues(V0: float, amb: AmbiguityParams, branch=None) -> ResidueData:
    """Residue of zeta = d/dy log(phi / sqrt(y)) at y = 0.

    b1 = (1 +- 2 sqrt|V0 - C|)/2.  The default is the Plus sign: it is the only sign
    compatible with the bound-state condition A > n (Minus corresponds to A - n < 0).
    """
    b = Branch.PLUS if branch is None else Branch.parse(branch)
    C = morse_C(amb)
    return ResidueData(0.0, 0.5 * (1 + b.value * 2 * np.sqrt(abs(V0 - C))), b)


def morse_infinity_expansion(eps: float, A: float, B: float):
    """Leading coefficients of zeta = B0 + B1/y + ... for large y."""
    if eps >= 0:
        raise PositiveEnergyError(f"bound states need eps < 0, got {eps}")
    B0 = -np.sqrt(-eps)
    return complex(B0), complex(-B * (1 + 2 * A) / (2 * B0))


def morse_quantization(amb: AmbiguityParams, A: float, n: int, B: float = 1.0) -> SpectralCondition:
    if int(n) != n or n < 0:
        raise ValueError("n must be a non-negative integer")
    if not A > n:
        raise UnboundError(f"bound-state condition A > n violated (A={A}, n={n})")
    V0 = morse_C(amb) + (A - n) ** 2
    res = morse_residues(V0, amb)
    return SpectralCondition(
        "Morse",
        {"A": A, "B": B, "alpha": amb.alpha, "beta": amb.beta},
        int(n),
        float(V0),
        float(-(B**2)),
        (res,),
        (res.branch,),
    )


def morse_eigenfunction(A: float, B: float, n: int, scale: float | None = None) -> ClosedFormState:
    """phi_n = y^(A-n+1) exp(-s y / 2) L_n^(2(A-n))(s y), y = exp(-x); default s = 2B."""
    if not A > n:
        raise UnboundError(f"bound-state condition A > n violated (A={A}, n={n})")
    if not B > 0:
        raise ValueError("B must be positive")
    s = 2.0 * B if scale is None else float(scale)
    mu = A - n
    return ClosedFormState(
        int(n),
        (Factor(0.0, mu + 1.0), Factor(None, -0.5 * s)),
        "laguerre",
        (2.0 * mu,),
        "exp_neg",
        s,
        (0.0, np.inf),
        {"case": "Morse", "scale": s},
    )


def morse_G(V0, A, B, amb: AmbiguityParams, eps, variant: str = "corrected") -> Callable:
    """G = eps e^{-2x} + B(2A+1) e^{-x} - V0 + K + c with c = -1 (corrected) or +1 (printed)."""
    _check_variant(variant)
    K = 2 * (amb.beta + 1) + 4 * amb.q
    c = -1.0 if variant == "corrected" else 1.0
    return lambda z: eps * np.exp(-2 * z) + B * (2 * A + 1) * np.exp(-z) - V0 + K + c


def calibrate_morse_scale(A: float, B: float, amb: AmbiguityParams, candidates: Sequence[float] | None = None,
                          x=None, n: int = 0):
    """Pick the Laguerre argument scale minimising the level-n residual.

    Returns (best_scale, {scale: max relative residual}).
    """
    cands = (1.0, 2.0 * B, B) if candidates is None else tuple(candidates)
    x = np.linspace(-8.0, 8.0, 2001) if x is None else np.asarray(x, float)
    cond = morse_quantization(amb, A, n, B)
    veff = veff_function(PotentialSpec.morse(cond.output_parameter, A, B), MassProfile.exponential_decay(), amb)
    prof = MassProfile.exponential_decay()
    scores = {}
    for s in cands:
        st = morse_eigenfunction(A, B, n, scale=s)
        scores[float(s)] = float(np.max(pdm_relative_residual(st, prof, veff, cond.energy, x)))
    best = min(scores, key=scores.get)
    return best, scores


# ------------------------------------------------------------------ Laurent data

def laurent_coefficients(G: Callable, pole: complex, orders, radius: float = 0.5, n_points: int = 256):
    """c_m = (1/2 pi i) closed integral of G(z) (z - pole)^(-m-1) dz for each m in orders."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    theta = 2 * np.pi * np.arange(n_points) / n_points
    w = radius * np.exp(1j * theta)
    vals = np.asarray(G(pole + w), complex)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("non-finite samples of G on the quadrature circle")
    return [complex(np.mean(vals * w ** (-m))) for m in orders]

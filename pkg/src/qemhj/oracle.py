"""Finite-difference reference solver and quadrature checks.

The effective Hamiltonian -d/dx (1/M) d/dx + V_eff is discretised on the interior nodes
of a uniform grid with Dirichlet ends.  The default ``conservative`` form puts 1/M at
half nodes and is symmetric tridiagonal as assembled; the ``raw`` form expands the
operator as -(1/M) u'' + (M'/M^2) u' + V_eff u with centred stencils and is symmetrised
by a diagonal similarity when its off-diagonal products are positive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal, eig

from .errors import ConvergenceError, DomainError, GridMismatchError, QuadratureError, RootFindingError
from .profiles import Grid, MassProfile, mass_derivatives
from .qhj_core import SampledComplexFunction
from .residue_spectra import ClosedFormState

__all__ = [
    "DiscretizedOperator",
    "EigenResult",
    "discretize_pdm",
    "symmetrize",
    "solve_lowest",
    "count_nodes",
    "contour_residue",
    "zero_residues",
    "action_variable",
    "eta_inner_product",
    "richardson",
    "cosine_similarity",
    "turning_points",
]

MAX_ITER = 500


@dataclass(frozen=True)
class DiscretizedOperator:
    """Tridiagonal operator on the interior nodes: (lower, diag, upper) bands."""

    grid: Grid
    diag: np.ndarray = field(compare=False)
    lower: np.ndarray = field(compare=False)
    upper: np.ndarray = field(compare=False)
    symmetric: bool = False
    # eigenvectors of this operator map back to wavefunction samples through v * scaling
    scaling: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        m = self.grid.n_points - 2
        if self.diag.shape != (m,) or self.lower.shape != (m - 1,) or self.upper.shape != (m - 1,):
            raise ValueError("band lengths do not match the interior of the grid")
        if self.symmetric and not np.array_equal(self.lower, self.upper):
            raise ValueError("symmetric flag set on non-symmetric bands")

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes[1:-1]

    def matvec(self, v):
        out = self.diag * v
        out[:-1] += self.upper * v[1:]
        out[1:] += self.lower * v[:-1]
        return out

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.upper, 1) + np.diag(self.lower, -1)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, sampled on the interior nodes
    residual_norms: np.ndarray
    x: np.ndarray = field(default=None, compare=False)


def discretize_pdm(profile: MassProfile, veff: Callable, grid: Grid, form: str = "conservative") -> DiscretizedOperator:
    x = grid.nodes
    if not profile.contains(x):
        raise DomainError(f"grid [{grid.x_lo}, {grid.x_hi}] leaves the {profile.kind} domain")
    h = grid.spacing
    xi = x[1:-1]
    v = veff(xi)
    if form == "conservative":
        p = 1.0 / mass_derivatives(profile, 0.5 * (x[1:] + x[:-1]))[0]
        diag = (p[:-1] + p[1:]) / h**2 + v
        off = -p[1:-1] / h**2
        return DiscretizedOperator(grid, diag, off.copy(), off.copy(), True)
    if form == "raw":
        m, m1, _ = mass_derivatives(profile, xi)
        diag = 2.0 / (m * h**2) + v
        up = -1.0 / (m * h**2) + m1 / (2 * h * m**2)
        lo = -1.0 / (m * h**2) - m1 / (2 * h * m**2)
        return DiscretizedOperator(grid, diag, lo[1:], up[:-1], False)
    raise ValueError(f"unknown form {form!r}")


def symmetrize(op: DiscretizedOperator) -> DiscretizedOperator:
    """Diagonal similarity S^-1 T S with symmetric bands; needs upper*lower > 0."""
    if op.symmetric:
        return op
    prod = op.upper * op.lower
    if np.any(prod <= 0):
        raise ValueError("operator is not symmetrisable by a real diagonal similarity")
    # d_{i+1}/d_i = sqrt(lower_i / upper_i) keeps T similar to a symmetric matrix
    ratio = np.sqrt(op.lower / op.upper)
    logd = np.concatenate([[0.0], np.cumsum(np.log(ratio))])
    off = -np.sqrt(prod)
    sc = np.exp(logd - logd.max())
    return DiscretizedOperator(op.grid, op.diag.copy(), off, off.copy(), True, sc)


def solve_lowest(opr: DiscretizedOperator, k: int) -> EigenResult:
    """Lowest k eigenpairs by bisection and inverse iteration on the symmetric band form."""
    m = opr.grid.n_points - 2
    if not 0 < k < m:
        raise ValueError(f"k must satisfy 0 < k < {m}")
    sym = opr
    if not opr.symmetric:
        try:
            sym = symmetrize(opr)
        except ValueError:
            sym = None
    if sym is None:
        w, vr = eig(opr.dense())
        order = np.argsort(w.real)[:k]
        lam, vecs = w.real[order], vr[:, order].real
    else:
        try:
            lam, vecs = eigh_tridiagonal(sym.diag, sym.upper, select="i", select_range=(0, k - 1),
                                         lapack_driver="stebz", tol=1e-13)
        except LinAlgError as exc:
            raise ConvergenceError(f"tridiagonal eigensolver failed within {MAX_ITER} iterations: {exc}")
        if sym.scaling is not None:
            vecs = vecs * sym.scaling[:, None]
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    res = np.array([np.linalg.norm(opr.matvec(vecs[:, j]) - lam[j] * vecs[:, j]) for j in range(k)])
    return EigenResult(np.asarray(lam), vecs, res, opr.x)


def count_nodes(v, rel_tol: float = 1e-12) -> int:
    v = np.real(np.asarray(v))
    keep = np.abs(v) >= rel_tol * np.abs(v).max()
    s = np.sign(v[keep])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def contour_residue(f: Callable, center: complex, radius: float, n_points: int = 256) -> complex:
    """(1/2 pi i) times the integral of f around a circle, by the trapezoid rule."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    w = radius * np.exp(2j * np.pi * np.arange(n_points) / n_points)
    vals = np.asarray(f(center + w), complex)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("non-finite integrand samples on the contour")
    return complex(np.mean(vals * w))


def _x_images(state: ClosedFormState, y):
    """All x with y(x) = y near the real axis (periodic copies included)."""
    y = complex(y)
    if state.arg_map == "cosh":
        base = np.arccosh(y + 0j)
        cands = [base, -base]
    else:
        cands = [-np.log(y + 0j)]
    return [c + 2j * np.pi * k for c in cands for k in (-1, 0, 1)]


def zero_residues(state: ClosedFormState, region: str = "real"):
    """Contour residues of p~ at the polynomial zeros of a closed-form state.

    ``region='real'`` takes every real zero in the mapped variable y, mapping it back to
    x (complex when it falls outside y(physical x)); ``'physical'`` keeps only zeros
    inside ``state.physical``.  Returns (x_k, residues).
    """
    ys = state.poly_zeros_y()
    if region == "physical":
        lo, hi = state.physical
        ys = ys[(ys > lo) & (ys < hi)]
    elif region != "real":
        raise ValueError(f"unknown region {region!r}")
    centres = [c for c in (f.center for f in state.factors) if c is not None]
    xs = [_x_images(state, y)[1] for y in ys]  # principal image (k = 0)
    xk_list, res = [], []
    for xk in xs:
        others = []
        for y in ys:
            for z in _x_images(state, y):
                if abs(z - xk) > 1e-12:
                    others.append(z)
        for c in centres:
            if state.arg_map == "exp_neg" and c == 0:
                continue  # y = 0 sits at x = +inf
            others.extend(_x_images(state, c))
        dmin = min(abs(z - xk) for z in others) if others else 1.0
        r = min(0.4 * dmin, 0.25)
        if r < 1e-10:
            raise RootFindingError("polynomial zeros too close to resolve")
        xk_list.append(xk)
        res.append(contour_residue(state.momentum, xk, r))
    return np.array(xk_list), np.array(res)


def action_variable(state: ClosedFormState, region: str = "real", tol: float = 1e-6):
    """J = sum of i * residue over the polynomial zeros, rounded; returns (J, residues)."""
    _, res = zero_residues(state, region)
    if np.any(np.abs(res + 1j) > tol):
        raise RootFindingError(f"a zero residue deviates from -i by more than {tol}")
    return int(np.rint(np.sum(1j * res).real)), res


def eta_inner_product(u: SampledComplexFunction, v: SampledComplexFunction, eta) -> complex:
    """Trapezoid integral of conj(u) eta v."""
    g = eta.grid
    if u.grid != v.grid or u.grid != g:
        raise GridMismatchError("u, v and eta must share one grid")
    return complex(np.trapezoid(np.conj(u.values) * eta.eta * v.values, g.nodes))


def richardson(values: Sequence[float], order: int = 2, ratio: float = 2.0) -> float:
    """Richardson tableau for values on grids refined by ``ratio``; error ~ h^order, h^(2 order), ..."""
    t = [float(v) for v in values]
    p = order
    while len(t) > 1:
        f = ratio**p
        t = [(f * t[i + 1] - t[i]) / (f - 1) for i in range(len(t) - 1)]
        p += order
    return t[0]


def cosine_similarity(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))


def turning_points(veff: Callable, E: float, grid: Grid) -> np.ndarray:
    """Classical turning points V_eff(x) = E on the grid, by linear interpolation of sign changes."""
    x = grid.nodes
    f = veff(x) - E
    s = np.sign(f)
    idx = np.where(s[:-1] * s[1:] < 0)[0]
    cross = x[idx] - f[idx] * (x[idx + 1] - x[idx]) / (f[idx + 1] - f[idx])
    return np.sort(np.concatenate([cross, x[s == 0]]))

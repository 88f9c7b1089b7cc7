"""Jacobi and generalised Laguerre polynomials by three-term recurrence.

All evaluators accept real or complex arrays. Parameters may be any reals;
the Jacobi recurrence raises :class:`RecurrenceBreakdown` instead of quietly
producing inf/nan when one of its denominators vanishes.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import RecurrenceBreakdown

__all__ = [
    "eval_jacobi",
    "eval_laguerre",
    "jacobi_derivative",
    "laguerre_derivative",
    "jacobi_coefficients",
    "laguerre_coefficients",
]


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n}")
    return int(n)


def _jacobi_steps(n, a, b):
    """Yield (A_k, B_k, C_k) so that P_k = (A_k y + B_k) P_{k-1} - C_k P_{k-2}."""
    for k in range(2, n + 1):
        s = 2 * k + a + b
        den = 2 * k * (k + a + b) * (s - 2)
        if den == 0:
            raise RecurrenceBreakdown(
                f"Jacobi recurrence denominator vanishes at k={k} for (a, b)=({a}, {b})"
            )
        yield (
            (s - 1) * s * (s - 2) / den,
            (s - 1) * (a * a - b * b) / den,
            2 * (k + a - 1) * (k + b - 1) * s / den,
        )


def eval_jacobi(n: int, l1: float, l2: float, y):
    """P_n^{(l1, l2)}(y)."""
    n = _check_degree(n)
    y = np.asarray(y)
    p0 = np.ones_like(y, dtype=np.result_type(y, float))
    if n == 0:
        return p0 if p0.ndim else p0[()]
    p1 = 0.5 * (l1 - l2) + (1.0 + 0.5 * (l1 + l2)) * y
    for ak, bk, ck in _jacobi_steps(n, l1, l2):
        p0, p1 = p1, (ak * y + bk) * p1 - ck * p0
    return p1


def eval_laguerre(n: int, k: float, y):
    """Generalised Laguerre L_n^{(k)}(y)."""
    n = _check_degree(n)
    y = np.asarray(y)
    l0 = np.ones_like(y, dtype=np.result_type(y, float))
    if n == 0:
        return l0 if l0.ndim else l0[()]
    l1 = 1.0 + k - y
    for m in range(2, n + 1):
        l0, l1 = l1, ((2 * m - 1 + k - y) * l1 - (m - 1 + k) * l0) / m
    return l1


def jacobi_derivative(n: int, l1: float, l2: float, y, order: int = 1):
    """d^order/dy^order of P_n^{(l1, l2)}."""
    y = np.asarray(y)
    if order > n:
        return np.zeros_like(y, dtype=np.result_type(y, float))
    coef = 1.0
    for j in range(order):
        coef *= 0.5 * (n + l1 + l2 + 1 + j)
    return coef * eval_jacobi(n - order, l1 + order, l2 + order, y)


def laguerre_derivative(n: int, k: float, y, order: int = 1):
    """d^order/dy^order of L_n^{(k)}."""
    y = np.asarray(y)
    if order > n:
        return np.zeros_like(y, dtype=np.result_type(y, float))
    return (-1) ** order * eval_laguerre(n - order, k + order, y)


def jacobi_coefficients(n: int, l1: float, l2: float) -> np.ndarray:
    """Monomial coefficients (lowest degree first) rebuilt from the recurrence."""
    n = _check_degree(n)
    p0 = np.array([1.0])
    if n == 0:
        return p0
    p1 = np.array([0.5 * (l1 - l2), 1.0 + 0.5 * (l1 + l2)])
    for ak, bk, ck in _jacobi_steps(n, l1, l2):
        p0, p1 = p1, P.polysub(P.polyadd(P.polymulx(ak * p1), bk * p1), ck * p0)
    return p1


def laguerre_coefficients(n: int, k: float) -> np.ndarray:
    n = _check_degree(n)
    l0 = np.array([1.0])
    if n == 0:
        return l0
    l1 = np.array([1.0 + k, -1.0])
    for m in range(2, n + 1):
        nxt = P.polysub(P.polyadd((2 * m - 1 + k) * l1, -P.polymulx(l1)), (m - 1 + k) * l0)
        l0, l1 = l1, nxt / m
    return l1

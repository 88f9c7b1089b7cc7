"""Exact rational series for Jacobi and Laguerre polynomials (test oracles)."""
from fractions import Fraction
from math import factorial


def gbinom(x, k):
    """Generalised binomial coefficient C(x, k) for rational x and integer k >= 0."""
    out = Fraction(1)
    for j in range(k):
        out *= (x - j)
    return out / factorial(k)


def jacobi_terms(n, a, b, y):
    a, b, y = Fraction(a), Fraction(b), Fraction(y)
    u, v = (y - 1) / 2, (y + 1) / 2
    return [gbinom(n + a, n - s) * gbinom(n + b, s) * u**s * v ** (n - s) for s in range(n + 1)]


def laguerre_terms(n, k, y):
    k, y = Fraction(k), Fraction(y)
    return [(-1) ** i * gbinom(n + k, n - i) * y**i / factorial(i) for i in range(n + 1)]


def jacobi_series(n, a, b, y):
    return sum(jacobi_terms(n, a, b, y))


def laguerre_series(n, k, y):
    return sum(laguerre_terms(n, k, y))


def rel_error(got, terms):
    """|got - exact| / max(|exact|, 1e-3 sum |terms|): relative, guarded near cancelling zeros."""
    exact = sum(terms)
    scale = max(abs(exact), Fraction(1, 1000) * sum(abs(t) for t in terms))
    if scale == 0:
        return abs(got - float(exact))
    return float(abs(Fraction(got) - exact) / scale)

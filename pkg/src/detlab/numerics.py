"""Dense linear algebra, quadrature and special-function primitives.

Everything downstream (kernels, Fredholm determinants, samplers) funnels its
numerics through this module so tolerances are set in one place.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

__all__ = [
    "DenseMatrix",
    "QuadratureRule",
    "ContourGrid",
    "det_lu",
    "gauss_legendre",
    "composite_gauss_legendre",
    "airy_ai",
    "bessel_j",
    "binomial_weight",
    "log_binomial_weight",
]


class StructuralError(ValueError):
    """Raised when an input violates a structural precondition."""


@dataclass(frozen=True)
class DenseMatrix:
    """Thin wrapper fixing row-major semantics for determinant inputs."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries)
        if a.ndim != 2:
            raise StructuralError("DenseMatrix requires a 2-d array")
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def det_lu(m) -> float | complex:
    """Determinant via pivoted LU elimination (LAPACK getrf underneath)."""
    a = m.entries if isinstance(m, DenseMatrix) else np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise StructuralError("determinant requires a square matrix")
    if a.size == 0:
        return 1.0
    if not np.all(np.isfinite(np.abs(a))):
        raise StructuralError("non-finite matrix entry")
    d = np.linalg.det(a)
    return complex(d) if np.iscomplexobj(a) else float(d)


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def gauss_legendre(m: int, lo: float, hi: float) -> QuadratureRule:
    """m-point Gauss-Legendre rule mapped to (lo, hi)."""
    if m < 1:
        raise StructuralError("need at least one quadrature point")
    if not lo < hi:
        raise StructuralError("empty interval")
    x, w = leggauss(m)
    half = 0.5 * (hi - lo)
    return QuadratureRule(lo + half * (x + 1.0), half * w, (lo, hi))


def composite_gauss_legendre(breaks, m: int) -> QuadratureRule:
    """Panel-wise Gauss-Legendre rule over consecutive intervals in `breaks`."""
    nodes, weights = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        r = gauss_legendre(m, lo, hi)
        nodes.append(r.nodes)
        weights.append(r.weights)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights),
                          (breaks[0], breaks[-1]))


@dataclass(frozen=True)
class ContourGrid:
    """Equispaced trapezoid grid on a circle |z - center| = radius.

    Trapezoid on such a grid integrates z^j exactly for |j| < m, which is
    what makes it the right tool for the double contour kernels.
    """

    center: complex
    radius: float
    m: int
    points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.radius <= 0 or self.m < 1:
            raise StructuralError("radius and m must be positive")
        theta = 2.0 * np.pi * np.arange(self.m) / self.m
        object.__setattr__(self, "points",
                           self.center + self.radius * np.exp(1j * theta))

    def integrate(self, values) -> complex:
        """(1/2*pi*i) * contour integral of f(z) dz from sampled values."""
        return complex(np.mean(np.asarray(values) * (self.points - self.center)))


def airy_ai(x):
    """Airy function Ai(x); vectorized, absolute error well below 1e-10."""
    return special.airy(x)[0]


def airy_ai_prime(x):
    return special.airy(x)[1]


def bessel_j(n, x):
    """Bessel function J_n(x) for integer order n >= 0 (vectorized)."""
    return special.jv(n, x)


def log_binomial_weight(n: int, x, q: float):
    """log of C(n,x) q^x (1-q)^(n-x), valid for n up to ~1e4."""
    x = np.asarray(x, dtype=float)
    return (special.gammaln(n + 1) - special.gammaln(x + 1)
            - special.gammaln(n - x + 1)
            + x * np.log(q) + (n - x) * np.log1p(-q))


def binomial_weight(n: int, x, q: float):
    """Binomial point mass C(n,x) q^x (1-q)^(n-x); 0 outside [0, n]."""
    if not 0.0 < q < 1.0:
        raise StructuralError("q must lie in (0,1)")
    xa = np.asarray(x)
    inside = (xa >= 0) & (xa <= n)
    out = np.zeros(np.shape(xa), dtype=float)
    if np.any(inside):
        vals = np.exp(log_binomial_weight(n, np.where(inside, xa, 0), q))
        out = np.where(inside, vals, 0.0)
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out

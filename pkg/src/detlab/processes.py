"""Determinantal point-process machinery.

Correlation estimation from sampled configurations, gap and last-particle
probabilities, the generalized Cauchy-Binet identity, and the two generic
kernel constructions: biorthogonal-family kernels and multilayer transition
kernels for measures given by products of transition determinants.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .numerics import det_lu

__all__ = [
    "PointConfig", "KernelHandle", "BiorthogonalSpec", "MultiLayerSpec",
    "estimate_correlation", "gap_probability", "last_particle_cdf",
    "cauchy_binet_check", "biorthogonal_kernel", "multilayer_kernel",
    "NumericalConsistencyError", "TailDivergenceError",
    "SingularConstructionError",
]


class NumericalConsistencyError(RuntimeError):
    """A computed probability fell outside its admissible numerical range."""


class TailDivergenceError(RuntimeError):
    """A diagonal kernel tail failed to become summably small."""


class SingularConstructionError(ValueError):
    """A biorthogonality matrix is numerically singular."""


@dataclass(frozen=True)
class PointConfig:
    """A finite particle configuration; optionally layered.

    points[k] is a position; if layers is given, layers[k] is the layer tag
    of point k and sites are (layer, position) pairs.
    """

    points: tuple
    layers: tuple | None = None

    def __init__(self, points, layers=None):
        points = tuple(points)
        if layers is not None:
            layers = tuple(layers)
            if len(layers) != len(points):
                raise ValueError("layers and points must have equal length")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "layers", layers)

    def site_set(self):
        if self.layers is None:
            return set(self.points)
        return set(zip(self.layers, self.points))


@dataclass
class KernelHandle:
    """An evaluatable correlation kernel.

    evaluate(z1, z2) takes positions, or (layer, position) pairs for layered
    kernels.  state is "discrete" or "continuous".  diagonal marks kernels
    that vanish off the diagonal (independent-site processes), for which
    gap probabilities reduce to products.
    """

    evaluate: object
    state: str = "discrete"
    hermitian: bool = True
    diagonal: bool = False
    batch: object = None

    def __call__(self, z1, z2):
        return self.evaluate(z1, z2)

    def matrix(self, sites):
        sites = list(sites)
        if self.batch is not None:
            return np.asarray(self.batch(sites, sites), dtype=float)
        return np.array([[self.evaluate(zi, zj) for zj in sites]
                         for zi in sites], dtype=float)


def estimate_correlation(samples, sites):
    """Fraction of samples with a particle at every site.

    Returns (value, standard error, sample count).  sites may be positions
    or (layer, position) pairs matching the samples' layering.
    """
    sites = list(sites)
    if len(set(sites)) != len(sites):
        raise ValueError("sites must be distinct")
    if not samples:
        raise ValueError("no samples")
    want = set(sites)
    hits = sum(1 for s in samples if want <= s.site_set())
    n = len(samples)
    p = hits / n
    se = math.sqrt(p * (1.0 - p) / n)
    return p, se, n


def gap_probability(kernel, B, with_raw=False):
    """P[no particle in B] = det(I - K)|_B for a finite discrete set B.

    The raw determinant is clamped to [0, 1] on output; pass with_raw=True
    to also get the unclamped value.  A non-hermitian kernel whose raw value
    leaves [-1e-6, 1+1e-6] raises NumericalConsistencyError.
    """
    B = list(B)
    if not B:
        raw = 1.0
    else:
        raw = float(det_lu(np.eye(len(B)) - kernel.matrix(B)))
    tol = 1e-6
    if not kernel.hermitian and not -tol <= raw <= 1.0 + tol:
        raise NumericalConsistencyError(
            f"gap determinant {raw} outside [0,1] beyond tolerance")
    value = min(1.0, max(0.0, raw))
    return (value, raw) if with_raw else value


def _discrete_tail_sites(kernel, t, tail_tol, cap, probe=200):
    start = int(math.floor(t)) + 1
    sites = []
    x = start
    while True:
        block = [kernel.evaluate(x + i, x + i) for i in range(probe)]
        if sum(abs(v) for v in block) < tail_tol:
            break
        sites.extend(range(x, x + probe))
        x += probe
        if len(sites) > cap:
            raise TailDivergenceError(
                f"diagonal tail above {tail_tol} after {cap} sites")
    return sites


def last_particle_cdf(kernel, t, tail_tol=1e-12, cap=100000):
    """P[last particle <= t] = det(I - K) on (t, infinity).

    Discrete kernels are truncated where the diagonal tail drops below
    tail_tol; diagonal kernels use the product/exponential formula for
    independent sites.  Continuous kernels are delegated to the Fredholm
    module.
    """
    if kernel.state == "continuous":
        if kernel.diagonal:
            # independent (Poissonian) density: exp(-int_t^inf rho)
            from .numerics import composite_gauss_legendre
            total = 0.0
            lo, width = t, 4.0
            while True:
                rule = composite_gauss_legendre(
                    list(np.linspace(lo, lo + width, 9)), 20)
                piece = rule.integrate(
                    np.array([kernel.evaluate(x, x) for x in rule.nodes]))
                total += piece
                lo += width
                width *= 2.0
                if abs(piece) < tail_tol:
                    break
                if lo - t > 1e6:
                    raise TailDivergenceError("density tail not integrable")
            return math.exp(-total)
        from . import fredholm
        return fredholm.continuous_last_particle_cdf(kernel, t)
    sites = _discrete_tail_sites(kernel, t, tail_tol, cap)
    if kernel.diagonal:
        value = 1.0
        for x in sites:
            value *= 1.0 - kernel.evaluate(x, x)
        return min(1.0, max(0.0, value))
    return gap_probability(kernel, sites)


def cauchy_binet_check(phi, psi, state):
    """Residual of the generalized Cauchy-Binet identity on a finite state.

    |det(sum_x phi_i psi_j) - (1/N!) sum over N-tuples det(phi_i(x_j))
    det(psi_i(x_j))|, enumerated exhaustively.
    """
    N = len(phi)
    if len(psi) != N:
        raise ValueError("phi and psi must have equal length")
    state = list(state)
    A = np.array([[sum(p(x) * q(x) for x in state) for q in psi]
                  for p in phi], dtype=float)
    lhs = float(det_lu(A))
    rhs = 0.0
    for xs in itertools.product(state, repeat=N):
        dp = det_lu(np.array([[p(x) for x in xs] for p in phi], dtype=float))
        dq = det_lu(np.array([[q(x) for x in xs] for q in psi], dtype=float))
        rhs += dp * dq
    rhs /= math.factorial(N)
    return abs(lhs - rhs)


@dataclass
class BiorthogonalSpec:
    """N function families phi, psi on a finite/quadrature state.

    weights defaults to counting measure.  The matrix a_ij = int phi_i psi_j
    must be nonsingular.
    """

    N: int
    state: tuple
    phi: tuple
    psi: tuple
    weights: tuple | None = None

    def __post_init__(self):
        if len(self.phi) != self.N or len(self.psi) != self.N:
            raise ValueError("need N functions in each family")
        if self.weights is not None and len(self.weights) != len(self.state):
            raise ValueError("one weight per state point")

    def gram(self):
        w = self.weights if self.weights is not None else [1.0] * len(self.state)
        return np.array([[sum(wk * p(x) * q(x)
                              for wk, x in zip(w, self.state))
                          for q in self.psi] for p in self.phi], dtype=float)


def _checked_lu(A, what):
    lu, piv = scipy.linalg.lu_factor(A)
    d = np.abs(np.diag(lu))
    if d.min() == 0.0 or d.min() < 1e-14 * max(d.max(), 1.0):
        raise SingularConstructionError(
            f"{what}: near-zero pivot {d.min():.3e} at index {int(d.argmin())}")
    if np.linalg.cond(A) > 1e12:
        warnings.warn(f"{what}: condition estimate above 1e12", RuntimeWarning)
    return lu, piv


def biorthogonal_kernel(spec):
    """K_N(x,y) = sum_ij psi_i(x) (A^-1)_ij phi_j(y), A the Gram matrix."""
    lu_piv = _checked_lu(spec.gram(), "biorthogonal kernel")

    def evaluate(x, y):
        pv = np.array([p(y) for p in spec.phi], dtype=float)
        qv = np.array([q(x) for q in spec.psi], dtype=float)
        return float(qv @ scipy.linalg.lu_solve(lu_piv, pv))

    return KernelHandle(evaluate, state="discrete", hermitian=False)


@dataclass
class MultiLayerSpec:
    """Data for the multilayer transition-determinant measure.

    transitions[r] evaluates phi_{r,r+1}(x, y) for r = 0..m; x0 and xm1 are
    the fixed boundary configurations on layers 0 and m+1; [lo, hi] is the
    integer window on which compositions are carried out.
    """

    n: int
    m: int
    transitions: tuple
    x0: tuple
    xm1: tuple
    lo: int
    hi: int

    def __post_init__(self):
        if len(self.transitions) != self.m + 1:
            raise ValueError("need m+1 transition functions")
        if len(self.x0) != self.n or len(self.xm1) != self.n:
            raise ValueError("boundary configurations must have n points")
        for x in tuple(self.x0) + tuple(self.xm1):
            if not self.lo <= x <= self.hi:
                raise ValueError("boundary point outside the window")


def multilayer_kernel(spec):
    """Layered kernel K(r,x; s,y) of the transition-determinant measure.

    K = Ktilde - phi_{r,s} with Ktilde built from the composed transitions
    to the fixed boundaries and the inverse boundary-coupling matrix;
    phi_{r,s} is the composition of the one-step transitions (zero for
    r >= s).  Layer arguments r, s lie in 1..m.
    """
    window = np.arange(spec.lo, spec.hi + 1)
    P = [np.array([[f(int(x), int(y)) for y in window] for x in window],
                  dtype=float) for f in spec.transitions]
    # C[(r, s)] = phi_{r,s} on the window, 0 <= r < s <= m+1
    C = {}
    for r in range(spec.m + 1):
        C[(r, r + 1)] = P[r]
        for s in range(r + 2, spec.m + 2):
            C[(r, s)] = C[(r, s - 1)] @ P[s - 1]
    i0 = [int(x) - spec.lo for x in spec.x0]
    i1 = [int(x) - spec.lo for x in spec.xm1]
    A = C[(0, spec.m + 1)][np.ix_(i0, i1)]
    lu_piv = _checked_lu(A, "multilayer kernel")

    def evaluate(z1, z2):
        r, x = z1
        s, y = z2
        if not (1 <= r <= spec.m and 1 <= s <= spec.m):
            raise ValueError("layers must lie in 1..m")
        if not (spec.lo <= x <= spec.hi and spec.lo <= y <= spec.hi):
            raise ValueError("position outside the window")
        ix, iy = int(x) - spec.lo, int(y) - spec.lo
        u = C[(r, spec.m + 1)][ix, i1]
        v = C[(0, s)][i0, iy]
        val = float(u @ scipy.linalg.lu_solve(lu_piv, v))
        if r < s:
            val -= C[(r, s)][ix, iy]
        return val

    return KernelHandle(evaluate, state="discrete", hermitian=False)

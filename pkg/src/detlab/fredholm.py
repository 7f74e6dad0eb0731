"""Fredholm determinants and the paper-of-record distribution functions.

det(I - K) on integer ranges, integer half-lines and real half-lines, plus
the derived CDFs: Tracy-Widom, Airy-process finite-dimensional
distributions, the last-passage time G(M,N) (two independent kernel routes)
and the Poissonized longest-increasing-subsequence law.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import det_lu, gauss_legendre
from .processes import (KernelHandle, NumericalConsistencyError,
                        TailDivergenceError, _discrete_tail_sites)
from . import kernels

__all__ = [
    "FredholmProblem", "NystromConfig", "fredholm_det", "tracy_widom_cdf",
    "airy_process_fdd", "g_cdf_exact", "l_alpha_cdf",
    "continuous_last_particle_cdf",
]


@dataclass
class FredholmProblem:
    """det(I - K) restricted to a domain.

    domain is ("range", lo, hi) for a finite integer range, ("halfline", lo)
    for an integer half-line, or ("real", t) for the continuous half-line
    (t, infinity).
    """

    kernel: KernelHandle
    domain: tuple

    def __post_init__(self):
        kind = self.domain[0]
        if kind not in ("range", "halfline", "real"):
            raise ValueError(f"unknown domain kind {self.domain[0]!r}")
        if kind == "range" and self.domain[1] > self.domain[2]:
            raise ValueError("empty integer range")
        if kind != "real" and self.kernel.state == "continuous":
            raise ValueError("continuous kernel on an integer domain")


@dataclass
class NystromConfig:
    """Quadrature control for continuous half-line determinants."""

    m: int = 64
    kind: str = "exponential"
    tol: float = 1e-10

    def __post_init__(self):
        if self.m < 8:
            raise ValueError("need at least 8 quadrature points")
        if self.kind != "exponential":
            raise ValueError(f"unknown change of variable {self.kind!r}")


def _halfline_rule(t, m):
    """Nodes/weights for int_t^inf via x = t - log(1-u), u in (0,1)."""
    rule = gauss_legendre(m, 0.0, 1.0)
    x = t - np.log1p(-rule.nodes)
    w = rule.weights / (1.0 - rule.nodes)
    return x, w


def _nystrom_det(kernel, t, m):
    x, w = _halfline_rule(t, m)
    sw = np.sqrt(w)
    if kernel.batch is not None:
        Kmat = np.asarray(kernel.batch(x, x), dtype=float)
    else:
        Kmat = np.array([[kernel.evaluate(xi, xj) for xj in x] for xi in x])
    A = sw[:, None] * Kmat * sw[None, :]
    return float(det_lu(np.eye(m) - A))


def _discrete_det(kernel, sites):
    if not sites:
        return 1.0
    M = kernel.matrix(sites)
    return float(det_lu(np.eye(len(sites)) - M))


def fredholm_det(problem, config=None):
    """det(I - K) on the problem domain.

    Integer domains are evaluated densely (half-lines truncated where the
    diagonal tail drops below 1e-12, the Hadamard bound for the discarded
    part).  Real half-lines use the symmetric sqrt(w) K sqrt(w) Nystrom
    discretization with m-doubling until the value is stable to the target
    tolerance.
    """
    config = config or NystromConfig()
    kind = problem.domain[0]
    if kind == "range":
        lo, hi = problem.domain[1], problem.domain[2]
        return _discrete_det(problem.kernel, list(range(lo, hi + 1)))
    if kind == "halfline":
        lo = problem.domain[1]
        sites = _discrete_tail_sites(problem.kernel, lo - 1, 1e-12, 100000)
        return _discrete_det(problem.kernel, sites)
    t = problem.domain[1]
    m = config.m
    prev = _nystrom_det(problem.kernel, t, m)
    while m < 4096:
        m *= 2
        cur = _nystrom_det(problem.kernel, t, m)
        if abs(cur - prev) <= config.tol:
            return cur
        prev = cur
    raise NumericalConsistencyError(
        f"Nystrom determinant not stable to {config.tol} at m=4096")


def continuous_last_particle_cdf(kernel, t, tol=1e-10):
    """det(I - K) on (t, infinity), clamped to [0, 1]."""
    val = fredholm_det(FredholmProblem(kernel, ("real", float(t))),
                       NystromConfig(tol=tol))
    return min(1.0, max(0.0, val))


_airy_handle = None


def tracy_widom_cdf(t):
    """F_TW(t) = det(I - Airy kernel) on L^2(t, infinity), t in [-10, 6]."""
    if not -10.0 <= t <= 6.0:
        raise ValueError("t must lie in [-10, 6]")
    global _airy_handle
    if _airy_handle is None:
        _airy_handle = kernels.airy_kernel_handle()
    return continuous_last_particle_cdf(_airy_handle, t)


def _airy_fdd_m(times, levels, m):
    k = len(times)
    rules = [_halfline_rule(levels[j], m) for j in range(k)]
    n = k * m
    A = np.empty((n, n))
    for j in range(k):
        xj, wj = rules[j]
        for l in range(k):
            xl, wl = rules[l]
            block = kernels.extended_airy_matrix(times[j], xj, times[l], xl)
            A[j * m:(j + 1) * m, l * m:(l + 1) * m] = (
                np.sqrt(wj)[:, None] * block * np.sqrt(wl)[None, :])
    return float(det_lu(np.eye(n) - A))


def airy_process_fdd(times, levels, tol=1e-8):
    """P[A(tau_j) <= xi_j for all j] = det(I - f A_ext f).

    Block Nystrom over (t, infinity) per time with the extended Airy kernel;
    1 <= len(times) <= 4, strictly increasing times.
    """
    times = [float(v) for v in times]
    levels = [float(v) for v in levels]
    if not 1 <= len(times) <= 4:
        raise ValueError("need 1..4 times")
    if len(levels) != len(times):
        raise ValueError("one level per time")
    if any(b <= a for a, b in zip(times[:-1], times[1:])):
        raise ValueError("times must be strictly increasing")
    m, prev = 32, None
    while m <= 512:
        cur = _airy_fdd_m(times, levels, m)
        if prev is not None and abs(cur - prev) <= tol:
            return min(1.0, max(0.0, cur))
        prev = cur
        m *= 2
    raise NumericalConsistencyError(
        f"Airy FDD determinant not stable to {tol} at m=512")


def g_cdf_exact(M, N, q, t):
    """P[G(M,N) <= t] for geometric(q) last-passage percolation, N >= M.

    Evaluated by two independent kernel routes -- the finite Krawtchouk
    projection on {t+M, ..., t+M+N-1} and the Meixner/Schur half-line
    determinant on {t+1, ...} -- which must agree to 1e-8.
    """
    if not 1 <= M <= N:
        raise ValueError("need 1 <= M <= N")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0,1)")
    t = int(t)
    if t < 0:
        return 0.0
    n = t + M + N - 1
    kr = kernels.krawtchouk_kernel(n, M, q)
    sites = list(range(t + M, n + 1))
    v1 = _discrete_det(kr, sites)
    mx = kernels.meixner_kernel(M, N, q)
    sites2 = _discrete_tail_sites(mx, t, 1e-12, 100000)
    v2 = _discrete_det(mx, sites2)
    if abs(v1 - v2) > 1e-8:
        raise NumericalConsistencyError(
            f"G({M},{N}) CDF routes disagree: Krawtchouk {v1!r} vs "
            f"Meixner {v2!r}")
    return min(1.0, max(0.0, v1))


def l_alpha_cdf(alpha, n):
    """Poissonized longest-increasing-subsequence law P[L(alpha) <= n].

    det(I - discrete Bessel kernel) on {n, n+1, ...}; alpha <= 1e4 keeps the
    Bessel orders in scipy's comfortable range.
    """
    if not 0.0 < alpha <= 1e4:
        raise ValueError("alpha must lie in (0, 1e4]")
    if n < 0:
        return 0.0
    B = kernels.discrete_bessel(alpha)
    sites = _discrete_tail_sites(B, n - 1, 1e-14, 100000)
    return min(1.0, max(0.0, _discrete_det(B, sites)))

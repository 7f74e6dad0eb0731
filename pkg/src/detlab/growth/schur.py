"""Schur polynomials, the Schur measure, and Plancherel weights."""
from __future__ import annotations

import math

import numpy as np

from ..numerics import det_lu
from .partition import Partition

__all__ = ["complete_homogeneous", "schur_poly", "schur_measure",
           "plancherel_weight", "f_lambda", "standard_tableaux_count"]


def complete_homogeneous(kmax: int, xs) -> list:
    """h_0..h_kmax of the variables xs by the product dynamic programme."""
    xs = list(xs)
    h = [0.0] * (kmax + 1)
    h[0] = 1.0
    for x in xs:
        # multiply the running generating function by 1/(1 - x t)
        for k in range(1, kmax + 1):
            h[k] = h[k] + x * h[k - 1]
    return h


def schur_poly(mu: Partition, vars) -> float:
    """Jacobi-Trudi determinant det(h_{mu_i - i + j}) in the given variables."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    xs = list(vars)
    if mu.length == 0:
        return 1.0
    if mu.length > len(xs):
        return 0.0
    n = mu.length
    kmax = mu[1] + n
    h = complete_homogeneous(kmax, xs)

    def hk(k):
        return 0.0 if k < 0 else h[k]

    m = np.array([[hk(mu[i + 1] - (i + 1) + (j + 1)) for j in range(n)]
                  for i in range(n)], dtype=float)
    return float(det_lu(m))


def schur_measure(mu: Partition, a, b) -> float:
    """p(mu) = s_mu(a) s_mu(b) * prod_{i,j} (1 - a_i b_j)."""
    a = list(a)
    b = list(b)
    if any(not 0.0 <= x < 1.0 for x in a + b):
        raise ValueError("parameters must lie in [0,1)")
    norm = 1.0
    for ai in a:
        for bj in b:
            norm *= (1.0 - ai * bj)
    return schur_poly(mu, a) * schur_poly(mu, b) * norm


def f_lambda(mu: Partition) -> int:
    """Number of standard Young tableaux of shape mu, by hook lengths."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    n = mu.size
    if n == 0:
        return 1
    hooks = mu.hook_lengths()
    num = math.factorial(n)
    den = 1
    for h in hooks:
        den *= h
    assert num % den == 0
    return num // den


def standard_tableaux_count(mu: Partition) -> int:
    """f_mu by direct recursive enumeration (slow oracle, n <= ~10)."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if mu.size == 0:
        return 1
    return sum(standard_tableaux_count(mu.remove_cell(i, j))
               for (i, j) in mu.outer_corners())


def plancherel_weight(mu: Partition, N: int) -> float:
    """f_mu^2 / N! for mu a partition of N, else 0."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if mu.size != N:
        return 0.0
    f = f_lambda(mu)
    return float(f * f) / math.factorial(N)

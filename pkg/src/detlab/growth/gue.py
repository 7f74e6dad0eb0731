"""Gaussian Unitary Ensemble sampling."""
from __future__ import annotations

import numpy as np

from ..rng import stream

__all__ = ["sample_gue", "sample_gue_batch"]


def _draw_matrices(rng, N: int, count: int) -> np.ndarray:
    """Hermitian matrices with density prop. to exp(-Tr M^2).

    Diagonal entries are N(0, 1/2); off-diagonal real and imaginary parts
    are N(0, 1/4) each, which is exactly the e^{-Tr M^2} convention.
    """
    diag = rng.standard_normal((count, N)) / np.sqrt(2.0)
    re = rng.standard_normal((count, N, N)) * 0.5
    im = rng.standard_normal((count, N, N)) * 0.5
    upper = np.triu(re + 1j * im, k=1)
    H = upper + np.conj(np.swapaxes(upper, 1, 2))
    idx = np.arange(N)
    H[:, idx, idx] = diag
    return H


def sample_gue(N: int, seed: int) -> np.ndarray:
    """Eigenvalues (ascending) of one GUE draw, N <= 16."""
    if not 1 <= N <= 16:
        raise ValueError("N must be in 1..16")
    H = _draw_matrices(stream(seed, 0), N, 1)
    return np.linalg.eigvalsh(H[0])


def sample_gue_batch(N: int, count: int, seed: int, chunk: int = 20000) -> np.ndarray:
    """count independent GUE spectra, shape (count, N), Philox streams."""
    if not 1 <= N <= 16:
        raise ValueError("N must be in 1..16")
    out = np.empty((count, N))
    done = 0
    k = 0
    while done < count:
        take = min(chunk, count - done)
        H = _draw_matrices(stream(seed, 100 + k), N, take)
        out[done:done + take] = np.linalg.eigvalsh(H)
        done += take
        k += 1
    return out

"""Geometric weight fields and last-passage (corner growth) recursions."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..rng import stream
from .partition import Partition

__all__ = [
    "GrowthField",
    "sample_geometric_field",
    "g_table",
    "g_bruteforce",
    "corner_growth_shape",
    "sample_g_batch",
]


@dataclass
class GrowthField:
    """Nonnegative integer weights w(i, j) on the cells of a partition shape.

    Cells are 1-indexed: (i, j) is column i of row j, present iff i <= shape_j.
    """

    shape: Partition
    w: dict
    a: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        cells = set(self.shape.cells())
        if set(self.w) != cells:
            raise ValueError("weights must cover the shape exactly")
        if any(v < 0 for v in self.w.values()):
            raise ValueError("weights must be nonnegative")

    def g_value(self, i: int, j: int) -> int:
        """G(i, j) by the corner recursion; 0 on and outside the axes."""
        return g_table(self)[(i, j)]


def sample_geometric_field(lam: Partition, a, b, seed: int) -> GrowthField:
    """w(i,j) ~ Geom(a_i * b_j) on S(lambda), by inversion, Philox stream."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    a = tuple(float(x) for x in a)
    b = tuple(float(x) for x in b)
    cells = lam.cells()
    if cells:
        imax = max(i for i, _ in cells)
        jmax = max(j for _, j in cells)
        if imax > len(a) or jmax > len(b):
            raise ValueError("parameter lists shorter than the shape")
    rng = stream(seed, 0)
    u = rng.random(len(cells))
    w = {}
    for (i, j), uk in zip(cells, u):
        p = a[i - 1] * b[j - 1]
        if not 0.0 <= p < 1.0:
            raise ValueError("need 0 <= a_i*b_j < 1")
        w[(i, j)] = 0 if p == 0.0 else int(np.floor(np.log1p(-uk) / np.log(p)))
    return GrowthField(lam, w, a, b)


def g_table(f: GrowthField) -> dict:
    """G(i,j) = max(G(i-1,j), G(i,j-1)) + w(i,j) over the shape (Eq-style recursion)."""
    G = {}
    for j in range(1, f.shape.length + 1):
        for i in range(1, f.shape[j] + 1):
            G[(i, j)] = max(G.get((i - 1, j), 0), G.get((i, j - 1), 0)) + f.w[(i, j)]
    return G


def g_bruteforce(f: GrowthField, M: int, N: int) -> int:
    """Max over all up/right paths (1,1) -> (M,N) of the summed weights."""
    if not f.shape.contains_cell(M, N):
        raise ValueError("cell outside shape")
    if M + N > 16:
        raise ValueError("brute force limited to small cells")
    best = None
    # a path is determined by which of the M+N-2 steps are "right"
    steps = M + N - 2
    for rights in combinations(range(steps), M - 1):
        i = j = 1
        total = f.w[(1, 1)]
        rset = set(rights)
        for s in range(steps):
            if s in rset:
                i += 1
            else:
                j += 1
            total += f.w[(i, j)]
        best = total if best is None else max(best, total)
    return best


def staircase(n: int) -> Partition:
    """The triangle shape {(i,j): i+j <= n+1}, i.e. (n, n-1, ..., 1)."""
    return Partition(tuple(range(n, 0, -1)))


def corner_growth_shape(q: float, n: int, seed: int) -> Partition:
    """The random shape S_CG(n) = {(M,N): G(M,N)+M+N-1 <= n} at time n."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0,1)")
    if n <= 0:
        return Partition(())
    lam = staircase(n)
    p = float(np.sqrt(q))
    fld = sample_geometric_field(lam, [p] * n, [p] * n, seed)
    G = g_table(fld)
    parts = []
    for j in range(1, n + 1):
        row = 0
        for i in range(1, n + 2 - j):
            if G[(i, j)] + i + j - 1 <= n:
                row = i
            else:
                break
        if row == 0:
            break
        parts.append(row)
    return Partition(tuple(parts))


# ---------------------------------------------------------------------------
# Batched Monte Carlo for G(M, N): the hot loop is jitted, randomness comes
# from pre-drawn Philox uniforms so results are reproducible per seed.

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    def njit(*args, **kw):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _g_last_row(u, M, N, logp):
    """One G(M,N) draw from an M*N block of uniforms, row-streaming O(N) memory."""
    row = np.zeros(N, dtype=np.int64)
    idx = 0
    for i in range(M):
        left = 0
        for j in range(N):
            w = int(np.floor(np.log(1.0 - u[idx]) / logp))
            idx += 1
            up = row[j]
            g = (left if left > up else up) + w
            row[j] = g
            left = g
    return row[N - 1]


@njit(cache=True)
def _g_batch_kernel(u, M, N, logp, out):
    block = M * N
    for s in range(out.size):
        out[s] = _g_last_row(u[s * block:(s + 1) * block], M, N, logp)


def sample_g_batch(M: int, N: int, q: float, samples: int, seed: int,
                   chunk: int = 256) -> np.ndarray:
    """Draw `samples` independent copies of G(M, N) with Geom(q) weights."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0,1)")
    out = np.empty(samples, dtype=np.int64)
    logp = float(np.log(q))
    block = M * N
    # keep the pre-drawn uniform buffer under ~10^7 entries
    chunk = max(1, min(chunk, 10_000_000 // block))
    done = 0
    k = 0
    while done < samples:
        take = min(chunk, samples - done)
        u = stream(seed, 1000 + k).random(take * block)
        _g_batch_kernel(u, M, N, logp, out[done:done + take])
        done += take
        k += 1
    return out

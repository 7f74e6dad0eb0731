"""The weight-preserving bijection between weight fields on a shape and
non-intersecting path families on its column graph, together with its inverse.

The forward map iterates the coupled recursions

    G[k](i,j) = max(G[k](i-1,j), G[k](i,j-1)) + w[k](i,j)
    w[k+1](i,j) = min(G[k](i-1,j), G[k](i,j-1)) - G[k](i-1,j-1)

and emits path k through the boundary points of the shape at heights
G[k-1](P_j) - k + 1.  The inverse peels the shape cell by cell along a fixed
chain in the Young lattice, reconstructing boundary G-values as it goes.
"""
from __future__ import annotations

import numpy as np

from .fields import GrowthField
from .partition import Partition
from .paths import MalformedPathsError, PathFamily

__all__ = ["theorem41_forward", "theorem41_inverse", "column_kinds",
           "path_log_weight", "field_log_weight"]


class BijectionInvariantError(AssertionError):
    """An internal invariant of the forward map failed (indicates a bug)."""


def _box(lam: Partition):
    K = lam[1]
    L = lam.length
    return K, L


def column_kinds(lam: Partition):
    """Per column j = 0..K+L-1 of the column graph: ('up', i) or ('down', i).

    A right-step of the boundary path from (i-1, x) to (i, x) makes column j
    an up column with parameter index i; a down-step from (x, i) to (x, i-1)
    makes it a down column with parameter index i.
    """
    K, L = _box(lam)
    pts = lam.boundary_path(K, L)
    kinds = []
    for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
        if x1 == x0 + 1 and y1 == y0:
            kinds.append(("up", x1))
        elif x1 == x0 and y1 == y0 - 1:
            kinds.append(("down", y0))
        else:
            raise AssertionError("boundary path is not right/down")
    return kinds


def _g_grid(w: np.ndarray) -> np.ndarray:
    """Corner recursion on a dense (K+1)x(L+1) grid with zero boundary."""
    K, L = w.shape[0] - 1, w.shape[1] - 1
    G = np.zeros_like(w)
    for i in range(1, K + 1):
        for j in range(1, L + 1):
            G[i, j] = max(G[i - 1, j], G[i, j - 1]) + w[i, j]
    return G


def theorem41_forward(field: GrowthField) -> PathFamily:
    """Map a weight field on S(lambda) to min(K, L) non-intersecting paths."""
    lam = field.shape
    K, L = _box(lam)
    if K == 0 or L == 0:
        return PathFamily("lambda-graph", [])
    kmax = min(K, L)
    pts = lam.boundary_path(K, L)

    w = np.zeros((K + 1, L + 1), dtype=np.int64)
    for (i, j), v in field.w.items():
        w[i, j] = v

    paths = []
    for k in range(1, kmax + 1):
        G = _g_grid(w)
        heights = [int(G[x, y]) - k + 1 for (x, y) in pts]
        # refined polyline: horizontal unit edge, then the vertical run
        poly = [(-L, heights[0])]
        for j in range(K + L):
            poly.append((-L + j + 1, heights[j]))
            if heights[j + 1] != heights[j]:
                poly.append((-L + j + 1, heights[j + 1]))
        paths.append(poly)
        # claim: w^{(k)} vanishes on rows/columns <= k (checked each stage)
        w_next = np.zeros_like(w)
        for i in range(1, K + 1):
            for j in range(1, L + 1):
                w_next[i, j] = min(G[i - 1, j], G[i, j - 1]) - G[i - 1, j - 1]
        for i in range(1, K + 1):
            for j in range(1, L + 1):
                if (i <= k or j <= k) and w_next[i, j] != 0:
                    raise BijectionInvariantError(
                        f"w^({k}) nonzero at low cell {(i, j)}")
        w = w_next
    # the next path (k = kmax+1) must be horizontal
    G = _g_grid(w)
    if any(int(G[x, y]) != 0 for (x, y) in pts):
        raise BijectionInvariantError("path beyond min(K,L) not horizontal")
    fam = PathFamily("lambda-graph", paths)
    fam.check_vertex_disjoint()
    return fam


def _path_heights(poly, K: int, L: int):
    """Recover the column heights h_0..h_{K+L} from a refined polyline."""
    byx = {}
    for (x, y) in poly:
        byx.setdefault(x, []).append(y)
    heights = []
    for j in range(K + L + 1):
        x = -L + j
        if x not in byx:
            raise MalformedPathsError(f"no vertex at column {x}")
        # the height after the vertical run in this column is listed last
        heights.append(byx[x][-1])
    return heights


def theorem41_inverse(paths: PathFamily, lam: Partition,
                      a=None, b=None) -> GrowthField:
    """Reconstruct the weight field from its path family on the shape graph."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    K, L = _box(lam)
    kmax = min(K, L)
    if len(paths.paths) != kmax:
        raise MalformedPathsError(
            f"expected {kmax} paths for this shape, got {len(paths.paths)}")
    pts = lam.boundary_path(K, L)
    kinds = column_kinds(lam)

    # peel chain: remove the outer corner with the largest row index first
    chain = []
    mu = lam
    while mu.size:
        cell = max(mu.outer_corners(), key=lambda c: c[1])
        chain.append(cell)
        mu = mu.remove_cell(*cell)

    w = {cell: 0 for cell in lam.cells()}  # w^(kmax)
    for k in range(kmax, 0, -1):
        heights = _path_heights(paths.paths[k - 1], K, L)
        # monotonicity per column direction
        for j, (kind, _) in enumerate(kinds):
            dh = heights[j + 1] - heights[j]
            if (kind == "up" and dh < 0) or (kind == "down" and dh > 0):
                raise MalformedPathsError("path violates column direction")
        G = {}  # known values of G^{(k-1)}
        for (x, y), h in zip(pts, heights):
            g = h + k - 1
            if (x == 0 or y == 0) and g != 0:
                raise MalformedPathsError("nonzero height on the axes")
            G[(x, y)] = g
        w_prev = {}
        for (m, n) in chain:
            gm = G[(m - 1, n)] if m > 1 else 0
            gn = G[(m, n - 1)] if n > 1 else 0
            val = G[(m, n)] - max(gm, gn)
            if val < 0:
                raise MalformedPathsError("negative reconstructed weight")
            w_prev[(m, n)] = val
            if m > 1 and n > 1:
                G[(m - 1, n - 1)] = min(gm, gn) - w[(m, n)]
        w = w_prev
    return GrowthField(lam, w,
                       a=tuple(a) if a is not None else (),
                       b=tuple(b) if b is not None else ())


def path_log_weight(paths: PathFamily, lam: Partition, a, b) -> float:
    """Sum over path edges of |step| * log(parameter) in the column graph."""
    K, L = _box(lam)
    kinds = column_kinds(lam)
    total = 0.0
    for poly in paths.paths:
        heights = _path_heights(poly, K, L)
        for j, (kind, i) in enumerate(kinds):
            step = abs(heights[j + 1] - heights[j])
            if step:
                p = a[i - 1] if kind == "up" else b[i - 1]
                total += step * np.log(p)
    return total


def field_log_weight(field: GrowthField, a, b) -> float:
    """log of prod (a_i b_j)^(w(i,j)) over the shape."""
    total = 0.0
    for (i, j), v in field.w.items():
        if v:
            total += v * (np.log(a[i - 1]) + np.log(b[j - 1]))
    return total

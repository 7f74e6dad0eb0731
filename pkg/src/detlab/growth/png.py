"""Discrete polynuclear growth driven by a staircase last-passage field.

The height function is h(x, t) = G((t+x+1)/2, (t-x+1)/2), with G extended to
half-integer arguments by G(i+1/2, j+1/2) = G(i, j) and G = 0 on and outside
the axes.  Nucleation events omega(x, t) = w((t+x+1)/2, (t-x+1)/2) occur on
the odd sublattice t - x odd.
"""
from __future__ import annotations

from .fields import GrowthField, g_table
from .partition import Partition

__all__ = ["png_height", "nucleation", "point_to_line", "endpoint_argmax",
           "staircase_field_order"]


def staircase_field_order(field: GrowthField) -> int:
    """Validate the staircase shape (M, M-1, ..., 1) and return M."""
    parts = field.shape.parts
    M = len(parts)
    if tuple(parts) != tuple(range(M, 0, -1)):
        raise ValueError("PNG needs a staircase shape (M, M-1, ..., 1)")
    return M


def _g_lookup(field: GrowthField, G: dict, i: int, j: int) -> int:
    if i <= 0 or j <= 0:
        return 0
    if not field.shape.contains_cell(i, j):
        raise ValueError(f"cell {(i, j)} outside the staircase")
    return G[(i, j)]


def png_height(field: GrowthField, x: int, t: int, G: dict | None = None) -> int:
    """h(x, t); 0 outside the cone |x| > t.  Valid for t <= M."""
    staircase_field_order(field)
    if abs(x) > t:
        return 0
    if G is None:
        G = g_table(field)
    if (t + x) % 2:  # (t+x+1)/2 is an integer
        i, j = (t + x + 1) // 2, (t - x + 1) // 2
    else:  # half-integer arguments: G(i+1/2, j+1/2) = G(i, j)
        i, j = (t + x) // 2, (t - x) // 2
    return _g_lookup(field, G, i, j)


def nucleation(field: GrowthField, x: int, t: int) -> int:
    """omega(x, t): the weight deposited at (x, t); 0 off the odd sublattice."""
    staircase_field_order(field)
    if (t - x) % 2 == 0:
        return 0
    i, j = (t + x + 1) // 2, (t - x + 1) // 2
    if i < 1 or j < 1:
        return 0
    return field.w[(i, j)] if field.shape.contains_cell(i, j) else 0


def point_to_line(field: GrowthField, N: int) -> int:
    """G_pl(N) = max over |u| < N of G(N+u, N-u) (staircase of order 2N-1)."""
    M = staircase_field_order(field)
    if 2 * N - 1 > M:
        raise ValueError("field staircase too small for this N")
    G = g_table(field)
    return max(G[(N + u, N - u)] for u in range(-(N - 1), N))


def endpoint_argmax(field: GrowthField, N: int) -> int:
    """Leftmost u attaining the point-to-line maximum."""
    M = staircase_field_order(field)
    if 2 * N - 1 > M:
        raise ValueError("field staircase too small for this N")
    G = g_table(field)
    best = None
    arg = None
    for u in range(-(N - 1), N):
        v = G[(N + u, N - u)]
        if best is None or v > best:
            best, arg = v, u
    return arg

"""Permutations: longest increasing subsequences and RSK shapes."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from ..rng import stream
from .partition import Partition

__all__ = ["PermutationRecord", "lis", "rsk_shape", "plancherel_sample"]


@dataclass(frozen=True)
class PermutationRecord:
    """A permutation of {1..N} stored one-line."""

    values: tuple

    def __init__(self, values):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise ValueError("not a permutation of 1..N")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)


def lis(sigma) -> int:
    """Length of the longest increasing subsequence (patience sorting)."""
    values = sigma.values if isinstance(sigma, PermutationRecord) else tuple(sigma)
    piles: list[int] = []
    for v in values:
        k = bisect_left(piles, v)
        if k == len(piles):
            piles.append(v)
        else:
            piles[k] = v
    return len(piles)


def rsk_shape(sigma) -> Partition:
    """Shape of the RSK insertion tableau, by row insertion."""
    values = sigma.values if isinstance(sigma, PermutationRecord) else tuple(sigma)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise ValueError("not a permutation of 1..N")
    rows: list[list[int]] = []
    for v in values:
        x = v
        for row in rows:
            k = bisect_left(row, x)
            if k == len(row):
                row.append(x)
                x = None
                break
            row[k], x = x, row[k]
        if x is not None:
            rows.append([x])
    return Partition(tuple(len(r) for r in rows))


def plancherel_sample(mode: str, seed: int, N: int | None = None,
                      alpha: float | None = None) -> Partition:
    """RSK shape of a uniform permutation; N fixed or Poisson(alpha)."""
    rng = stream(seed, 0)
    if mode == "fixed":
        if N is None or N < 0:
            raise ValueError("fixed mode needs N >= 0")
        n = N
    elif mode == "poisson":
        if alpha is None or alpha <= 0:
            raise ValueError("poisson mode needs alpha > 0")
        n = int(rng.poisson(alpha))
    else:
        raise ValueError("mode must be 'fixed' or 'poisson'")
    perm = rng.permutation(n) + 1
    return rsk_shape(perm)

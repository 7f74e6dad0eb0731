"""Integer partitions, their shapes and right/down boundary paths."""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Partition"]


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of nonnegative integers (trailing zeros dropped)."""

    parts: tuple

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError("negative part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k):
        """1-indexed part access; parts beyond the length are 0."""
        if k < 1:
            raise IndexError("parts are 1-indexed")
        return self.parts[k - 1] if k <= len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def cells(self):
        """Shape S(lambda) as 1-indexed cells (i, j): column i of row j, i <= lambda_j."""
        return [(i, j) for j, p in enumerate(self.parts, start=1)
                for i in range(1, p + 1)]

    def contains_cell(self, i: int, j: int) -> bool:
        return 1 <= j and i >= 1 and i <= self[j]

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(tuple(sum(1 for p in self.parts if p >= i)
                               for i in range(1, self.parts[0] + 1)))

    def boundary_path(self, K: int | None = None, L: int | None = None):
        """Right/down path points P_0..P_{K+L} from (0, L) to (K, 0).

        The path descends from height k to k-1 at x = lambda_k, so the
        maximal x visited at height k-1 is lambda_k.
        """
        K = self[1] if K is None else K
        L = self.length if L is None else L
        if K < self[1] or L < self.length:
            raise ValueError("bounding box smaller than the partition")
        pts = [(0, L)]
        x = 0
        for y in range(L, 0, -1):
            target = self[y]
            while x < target:
                x += 1
                pts.append((x, y))
            pts.append((x, y - 1))
        while x < K:
            x += 1
            pts.append((x, 0))
        return pts

    @staticmethod
    def from_boundary_path(pts) -> "Partition":
        """Inverse of boundary_path: lambda_y is the x-position of the
        descent from height y to y-1 (round-trip identity)."""
        desc = {}
        for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
            if x1 == x0 and y1 == y0 - 1:
                desc[y0] = x0
        if not desc:
            return Partition(())
        L = max(desc)
        return Partition(tuple(desc[y] for y in range(1, L + 1)))

    def outer_corners(self):
        """Removable cells (i, j), i.e. (lambda_j, j) with lambda_j > lambda_{j+1}."""
        out = []
        for j in range(1, self.length + 1):
            if self[j] > self[j + 1]:
                out.append((self[j], j))
        return out

    def remove_cell(self, i: int, j: int) -> "Partition":
        if (i, j) not in self.outer_corners():
            raise ValueError("not an outer corner")
        parts = list(self.parts)
        parts[j - 1] -= 1
        return Partition(tuple(parts))

    def hook_lengths(self):
        conj = self.conjugate()
        return [self[j] - i + conj[i] - j + 1 for (i, j) in self.cells()]

    def contains(self, other: "Partition") -> bool:
        return all(other[j] <= self[j] for j in range(1, other.length + 1))

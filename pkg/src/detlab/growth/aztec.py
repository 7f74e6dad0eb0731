"""Aztec diamond tilings: shuffling sampler, path picture, particles, NPR.

Lattice squares are addressed by their lower-left corner (x, y); the square
[x, x+1] x [y, y+1] belongs to the order-n diamond A_n iff f(x) + f(y) <= n+1
with f(t) = t+1 for t >= 0 and -t otherwise.  A square is white iff x+y+n is
even, which makes the leftmost square of each top-half row white.  Horizontal
dominos are N when their left square is white, S otherwise; vertical dominos
are W when their upper square is white, E otherwise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..processes import PointConfig
from ..rng import stream
from .partition import Partition
from .paths import PathFamily

__all__ = ["DominoTiling", "ShuffleInvariantError", "in_diamond",
           "domino_class", "aztec_shuffle", "tiling_to_paths",
           "npr_boundary", "NprBoundary", "paths_to_particles",
           "particle_array", "npr_dominos", "npr_shape"]

TILING_SCHEMA = "tiling/1"


class ShuffleInvariantError(RuntimeError):
    """Internal shuffling consistency failure (uncoverable cell)."""


def in_diamond(x: int, y: int, n: int) -> bool:
    fx = x + 1 if x >= 0 else -x
    fy = y + 1 if y >= 0 else -y
    return fx + fy <= n + 1


def domino_class(x: int, y: int, orient: str, n: int) -> str:
    if orient == "H":
        return "N" if (x + y + n) % 2 == 0 else "S"
    if orient == "V":
        return "W" if (x + y + 1 + n) % 2 == 0 else "E"
    raise ValueError("orient must be 'H' or 'V'")


@dataclass(frozen=True)
class DominoTiling:
    """A domino tiling of A_n; dominos as (x, y, orient) anchored lower-left."""

    n: int
    dominos: tuple

    def __init__(self, n, dominos):
        dominos = tuple(sorted((int(x), int(y), str(o)) for x, y, o in dominos))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "dominos", dominos)
        self.validate()

    def validate(self):
        seen = set()
        for x, y, o in self.dominos:
            if o == "H":
                sq = ((x, y), (x + 1, y))
            elif o == "V":
                sq = ((x, y), (x, y + 1))
            else:
                raise ValueError("orient must be 'H' or 'V'")
            for s in sq:
                if not in_diamond(s[0], s[1], self.n):
                    raise ValueError(f"square {s} outside A_{self.n}")
                if s in seen:
                    raise ValueError(f"square {s} covered twice")
                seen.add(s)
        if len(seen) != 2 * self.n * (self.n + 1):
            raise ValueError("dominos do not cover A_n")

    def classes(self):
        return [domino_class(x, y, o, self.n) for x, y, o in self.dominos]

    @property
    def vertical_count(self) -> int:
        return sum(1 for _, _, o in self.dominos if o == "V")

    def to_json(self) -> str:
        payload = {
            "schema": TILING_SCHEMA,
            "n": self.n,
            "dominos": [
                {"x": x, "y": y, "orient": o,
                 "class": domino_class(x, y, o, self.n)}
                for x, y, o in self.dominos],
        }
        return json.dumps(payload, separators=(",", ":"), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "DominoTiling":
        payload = json.loads(text)
        if payload.get("schema") != TILING_SCHEMA:
            raise ValueError("unknown tiling schema")
        n = payload["n"]
        dominos = []
        for d in payload["dominos"]:
            cls = domino_class(d["x"], d["y"], d["orient"], n)
            if d.get("class", cls) != cls:
                raise ValueError("class tag inconsistent with checkerboard rule")
            dominos.append((d["x"], d["y"], d["orient"]))
        return DominoTiling(n, dominos)


# anchor grid codes: 0 empty, 1 N, 2 S, 3 E, 4 W; each domino is stored at
# its white square (N: left, S: right, E: lower, W: upper).

@njit(cache=True)
def _in_diamond_nb(x, y, n):
    fx = x + 1 if x >= 0 else -x
    fy = y + 1 if y >= 0 else -y
    return fx + fy <= n + 1


@njit(cache=True)
def _shuffle_step(anc, out, cov, k, off, q, us):
    dim = anc.shape[0]
    # slide the survivors of stage k-1 into the stage-k grid; a domino whose
    # destruction partner is present is skipped (bad pairs are disjoint)
    for mi in range(dim):
        for li in range(dim):
            c = anc[mi, li]
            if c == 0:
                continue
            if c == 1:                      # N slides up
                if anc[mi + 1, li + 1] == 2:
                    continue
                out[mi, li + 1] = 1
            elif c == 2:                    # S slides down
                if anc[mi - 1, li - 1] == 1:
                    continue
                out[mi, li - 1] = 2
            elif c == 3:                    # E slides right
                if anc[mi + 1, li + 1] == 4:
                    continue
                out[mi + 1, li] = 3
            else:                           # W slides left
                if anc[mi - 1, li - 1] == 3:
                    continue
                out[mi - 1, li] = 4
    # occupancy of the slid dominos
    for mi in range(dim):
        for li in range(dim):
            cov[mi, li] = False
    for mi in range(dim):
        for li in range(dim):
            c = out[mi, li]
            if c == 0:
                continue
            cov[mi, li] = True
            if c == 1:
                cov[mi + 1, li] = True
            elif c == 2:
                cov[mi - 1, li] = True
            elif c == 3:
                cov[mi, li + 1] = True
            else:
                cov[mi, li - 1] = True
    # fill the empty 2x2 blocks, scanning rows upward, left to right; every
    # empty square must be the black lower-left corner of an empty block
    u_idx = 0
    for li in range(off - k, off + k):
        for mi in range(off - k, off + k):
            m = mi - off
            l = li - off
            if not _in_diamond_nb(m, l, k):
                continue
            if cov[mi, li]:
                continue
            if (m + l + k) % 2 == 0:
                return -1
            if cov[mi + 1, li] or cov[mi, li + 1] or cov[mi + 1, li + 1]:
                return -1
            if u_idx >= us.shape[0]:
                return -1
            if us[u_idx] < q:
                out[mi, li + 1] = 4         # W: left column, upper white
                out[mi + 1, li] = 3         # E: right column, lower white
            else:
                out[mi + 1, li] = 2         # S: bottom row, right white
                out[mi, li + 1] = 1         # N: top row, left white
            u_idx += 1
            cov[mi, li] = True
            cov[mi + 1, li] = True
            cov[mi, li + 1] = True
            cov[mi + 1, li + 1] = True
    return u_idx


def _tiling_from_anchors(anc, n, off):
    dominos = []
    dim = anc.shape[0]
    for mi in range(dim):
        for li in range(dim):
            c = anc[mi, li]
            if c == 0:
                continue
            m, l = mi - off, li - off
            if c == 1:
                dominos.append((m, l, "H"))
            elif c == 2:
                dominos.append((m - 1, l, "H"))
            elif c == 3:
                dominos.append((m, l, "V"))
            else:
                dominos.append((m, l - 1, "V"))
    return DominoTiling(n, dominos)


def aztec_shuffle(n: int, a: float, seed: int) -> DominoTiling:
    """Sample a tiling of A_n with weight a^{#vertical} by domino shuffling.

    Builds A_1 -> A_2 -> ... -> A_n: destroy bad pairs, slide N/S/E/W
    dominos up/down/right/left, then fill each empty 2x2 block with a
    vertical pair with probability q = a^2/(1+a^2).  Stage k consumes its
    own substream of uniforms, so prefixes of the evolution are shared
    between runs at different n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not a > 0:
        raise ValueError("a must be positive")
    q = a * a / (1.0 + a * a)
    off = n + 1
    dim = 2 * n + 2
    anc = np.zeros((dim, dim), dtype=np.int8)
    out = np.zeros_like(anc)
    cov = np.zeros((dim, dim), dtype=np.bool_)
    for k in range(1, n + 1):
        us = stream(seed, k).random(k * (k + 1) // 2)
        out[:] = 0
        used = _shuffle_step(anc, out, cov, k, off, q, us)
        if used < 0:
            raise ShuffleInvariantError(f"uncoverable cell at stage {k}")
        anc, out = out, anc
    return _tiling_from_anchors(anc, n, off)


def tiling_to_paths(t: DominoTiling) -> PathFamily:
    """The n non-intersecting lattice paths drawn on the S/E/W dominos.

    Path r runs from (-n-1+r, -r+1/2) to (n+1-r, -r+1/2); N-dominos carry
    no path.  Vertices are (integer x, half-integer y) pairs.
    """
    n = t.n
    # segments keyed by left endpoint, heights stored doubled
    seg = {}
    for x, y, o in t.dominos:
        cls = domino_class(x, y, o, n)
        if cls == "W":
            seg[(x, 2 * y + 1)] = (x + 1, 2 * y + 3)
        elif cls == "E":
            seg[(x, 2 * y + 3)] = (x + 1, 2 * y + 1)
        elif cls == "S":
            seg[(x, 2 * y + 1)] = (x + 2, 2 * y + 1)
    paths = []
    for r in range(1, n + 1):
        pos = (-n - 1 + r, -2 * r + 1)
        verts = [pos]
        while pos[0] < n + 1 - r:
            pos = seg[pos]
            verts.append(pos)
        paths.append([(x, yd / 2.0) for x, yd in verts])
    return PathFamily("CS-I", paths)


@dataclass
class NprBoundary:
    """The top path X_n as a piecewise-linear function on [-n, n]."""

    n: int
    vertices: list

    def __call__(self, t: float) -> float:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        if not -self.n <= t <= self.n:
            raise ValueError("argument outside [-n, n]")
        return float(np.interp(t, xs, ys))


def npr_boundary(t: DominoTiling) -> NprBoundary:
    top = tiling_to_paths(t).paths[0]
    return NprBoundary(t.n, top)


def _csii_paths(paths, n):
    """CS-I vertex lists -> CS-II integer vertex lists."""
    out = []
    for path in paths:
        verts = []
        for x1, y1 in path:
            x2 = (x1 + y1 + n + 0.5) / 2.0
            y2 = (y1 - x1 - n + 0.5) / 2.0
            xi, yi = round(x2), round(y2)
            assert abs(x2 - xi) < 1e-9 and abs(y2 - yi) < 1e-9
            verts.append((int(xi), int(yi)))
        out.append(verts)
    return out


def particle_array(p: PathFamily, n: int, N: int | None = None) -> np.ndarray:
    """Particle positions x^r_j as an array of shape (2n+1, N).

    Column k of the rotated picture is doubled: line 2k takes the lowest
    vertex (plus shift k), line 2k+1 takes the highest vertex of column k+1
    (plus shift k+1).  Paths beyond the diamond's n are frozen diagonals, so
    x^r_j = 1-j for j > n, and x^0_j = x^{2n}_j = 1-j always.
    """
    if p.frame != "CS-I":
        raise ValueError("expected a CS-I family")
    N = n if N is None else N
    if N < n:
        raise ValueError("need at least n paths")
    csii = _csii_paths(p.paths, n)
    xs = np.empty((2 * n + 1, N), dtype=np.int64)
    for j in range(1, N + 1):
        if j <= n:
            cols = {}
            for x2, y2 in csii[j - 1]:
                lo, hi = cols.get(x2, (y2, y2))
                cols[x2] = (min(lo, y2), max(hi, y2))
        else:
            cols = {}
        for k in range(0, n + 1):
            bot = cols.get(k, (1 - j - k, 1 - j - k))[0]
            xs[2 * k, j - 1] = bot + k
            if k >= 1:
                top = cols.get(k, (1 - j - k, 1 - j - k))[1]
                xs[2 * k - 1, j - 1] = top + k
    return xs


def paths_to_particles(p: PathFamily, n: int, N: int | None = None) -> PointConfig:
    """Layered particle configuration on lines {1..2n-1} x Z."""
    xs = particle_array(p, n, N)
    pts, layers = [], []
    for r in range(1, 2 * n):
        for v in xs[r]:
            pts.append(int(v))
            layers.append(r)
    return PointConfig(pts, layers)


def npr_dominos(t: DominoTiling) -> list:
    """The north polar region: N-dominos connected to the upper boundary
    through chains of edge-adjacent N-dominos."""
    n = t.n
    ndom = [(x, y) for x, y, o in t.dominos
            if o == "H" and domino_class(x, y, o, n) == "N"]
    owner = {}
    for d in ndom:
        x, y = d
        owner[(x, y)] = d
        owner[(x + 1, y)] = d
    seeds = []
    for d in ndom:
        x, y = d
        if y < 0:
            continue
        for sx, sy in ((x, y), (x + 1, y)):
            if any(not in_diamond(sx + dx, sy + dy, n)
                   for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))):
                seeds.append(d)
                break
    found = set(seeds)
    queue = list(seeds)
    while queue:
        x, y = queue.pop()
        for sx, sy in ((x, y), (x + 1, y)):
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = owner.get((sx + dx, sy + dy))
                if nb is not None and nb not in found:
                    found.add(nb)
                    queue.append(nb)
    return sorted(found)


def npr_shape(t: DominoTiling) -> Partition:
    """The NPR read as a partition shape in the rotated frame whose origin
    sits above the diamond's top vertex."""
    n = t.n
    cells = set()
    for x, y in npr_dominos(t):
        # domino center (x+1, y+1/2) mapped along the (-1,-1)/(1,-1) axes
        i = (n - x - y) // 2
        j = (n + x - y + 2) // 2
        cells.add((i, j))
    if not cells:
        return Partition(())
    rows = {}
    for i, j in cells:
        rows.setdefault(j, []).append(i)
    L = max(rows)
    parts = []
    for j in range(1, L + 1):
        lam = len(rows.get(j, []))
        if sorted(rows.get(j, [])) != list(range(1, lam + 1)):
            raise ValueError("NPR rows are not left-justified")
        parts.append(lam)
    return Partition(parts)

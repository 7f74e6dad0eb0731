"""Non-intersecting path families shared by the tiling and bijection code."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

__all__ = ["PathFamily", "MalformedPathsError", "enumerate_paths",
           "lgv_determinant", "nonintersecting_total_weight"]


class MalformedPathsError(ValueError):
    pass


@dataclass
class PathFamily:
    """A list of lattice paths, each a list of (x, y) vertices.

    frame identifies the coordinate system: "CS-I" (tiling picture),
    "CS-II" (rotated picture) or "lambda-graph" (column graph of a shape,
    vertices ((-L+j), height)).
    """

    frame: str
    paths: list

    def __len__(self):
        return len(self.paths)

    def check_vertex_disjoint(self):
        """Raise if any two paths share a vertex (after unit-step refinement).

        Paths are refined so that a vertical run through intermediate integer
        heights counts every lattice point it passes.
        """
        seen = set()
        for path in self.paths:
            pts = set()
            for (x0, y0), (x1, y1) in zip(path[:-1], path[1:]):
                pts.add((x0, y0))
                if x0 == x1:  # vertical run: include intermediate points
                    step = 1 if y1 > y0 else -1
                    y = y0
                    while y != y1:
                        y += step
                        pts.add((x1, y))
                else:
                    pts.add((x1, y1))
            pts.add(tuple(path[-1]))
            if seen & pts:
                raise MalformedPathsError("paths intersect")
            seen |= pts


def enumerate_paths(graph, start, end):
    """All directed paths start -> end in an acyclic graph.

    graph maps node -> iterable of (successor, weight).  Returns a list of
    (vertex tuple, weight product) pairs; weights multiply exactly when
    given as integers or fractions.
    """
    out = []

    def walk(node, verts, w):
        if node == end:
            out.append((tuple(verts), w))
        for nxt, wt in graph.get(node, ()):
            walk(nxt, verts + [nxt], w * wt)

    walk(start, [start], 1)
    return out


def _det_exact(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sgn = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sgn = -sgn
        term = sgn
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def lgv_determinant(graph, starts, ends):
    """det of the pairwise path-weight matrix, evaluated exactly.

    Entry (i, j) sums the weights of all paths starts[i] -> ends[j]; for a
    graph where crossing path families must share a vertex this equals the
    total weight of vertex-disjoint families connecting starts[i] -> ends[i].
    """
    m = [[sum(w for _, w in enumerate_paths(graph, s, e)) for e in ends]
         for s in starts]
    return _det_exact(m)


def nonintersecting_total_weight(graph, starts, ends):
    """Total weight of vertex-disjoint path families, by brute enumeration."""
    per_pair = [enumerate_paths(graph, s, e) for s, e in zip(starts, ends)]
    total = 0
    for combo in itertools.product(*per_pair):
        vsets = [set(p) for p, _ in combo]
        ok = True
        for i in range(len(vsets)):
            for j in range(i + 1, len(vsets)):
                if vsets[i] & vsets[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            w = 1
            for _, wt in combo:
                w *= wt
            total += w
    return total

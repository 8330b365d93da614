"""Convexity tests and enumeration of convex cycles via antipodal intervals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .partial_cube import ThetaEmbedding


@dataclass(frozen=True)
class ConvexCycle:
    """A convex cycle, canonically oriented.

    ``vertices`` starts at the smallest vertex and walks toward its smaller
    cycle neighbor.  ``classes[j]`` is the edge class of (vertices[j],
    vertices[j+1]) for the first half; antipodal edges repeat the classes.
    """

    vertices: tuple[int, ...]
    classes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def half(self) -> int:
        return len(self.vertices) // 2

    def edge(self, j: int) -> tuple[int, int]:
        u = self.vertices[j % self.length]
        v = self.vertices[(j + 1) % self.length]
        return (u, v) if u < v else (v, u)

    def edge_class(self, j: int) -> int:
        return self.classes[j % self.half]

    def crosses(self, class_index: int) -> bool:
        return class_index in self.classes


def is_convex(g: Graph, vertices) -> bool:
    """True iff every shortest path between members stays inside the set."""
    members = np.asarray(sorted(set(int(v) for v in vertices)), dtype=np.intp)
    if members.size == 0:
        raise ValueError("convexity is defined for nonempty vertex sets")
    if members.size == g.n:
        return True
    outside = np.ones(g.n, dtype=bool)
    outside[members] = False
    out_idx = np.nonzero(outside)[0]
    d = g.dist
    for a in range(members.size):
        x = members[a]
        rest = members[a + 1:]
        if rest.size == 0:
            continue
        detour = d[x][out_idx][:, None] + d[np.ix_(out_idx, rest)]
        if (detour.min(axis=0) <= d[x][rest]).any():
            return False
    return True


def _trace_cycle(g: Graph, members: np.ndarray) -> list[int] | None:
    """Walk the induced subgraph; a single cycle covering all members, or None."""
    mset = set(int(v) for v in members)
    nbrs = {v: [w for w in g.adj[v] if w in mset] for v in mset}
    if any(len(ws) != 2 for ws in nbrs.values()):
        return None
    start = min(mset)
    second = min(nbrs[start])
    seq = [start, second]
    while True:
        a, b = seq[-2], seq[-1]
        nxt = nbrs[b][0] if nbrs[b][0] != a else nbrs[b][1]
        if nxt == start:
            break
        seq.append(nxt)
        if len(seq) > len(mset):
            return None
    return seq if len(seq) == len(mset) else None


def enumerate_convex_cycles(g: Graph, e: ThetaEmbedding) -> list[ConvexCycle]:
    """Every convex cycle exactly once, canonically ordered.

    A convex cycle of length 2d is the interval of each of its antipodal
    vertex pairs, so scanning pairs (u, v) whose interval has exactly 2d
    vertices and induces a convex cycle finds them all; the |I| = 2d size
    filter discards almost every pair before any expensive check.
    """
    d = g.dist
    n = g.n
    d32 = d.astype(np.int32)
    found: dict[frozenset, ConvexCycle] = {}
    for u in range(n):
        du = d32[u]
        counts = ((du[:, None] + d32) == du[None, :]).sum(axis=0)
        for v in np.nonzero((counts == 2 * du) & (du >= 2))[0]:
            v = int(v)
            if v <= u:
                continue
            members = np.nonzero(du + d[v] == du[v])[0]
            key = frozenset(int(w) for w in members)
            if key in found:
                continue
            seq = _trace_cycle(g, members)
            if seq is None or not is_convex(g, members):
                continue
            found[key] = _make_cycle(e, seq)
    return sorted(found.values(), key=lambda c: (c.length, c.vertices))


def _make_cycle(e: ThetaEmbedding, seq: list[int]) -> ConvexCycle:
    length = len(seq)
    classes = []
    for j in range(length // 2):
        a, b = seq[j], seq[(j + 1) % length]
        classes.append(e.class_of[(a, b) if a < b else (b, a)])
    return ConvexCycle(vertices=tuple(seq), classes=tuple(classes))

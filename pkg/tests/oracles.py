"""Independent brute-force oracles used to freeze expected test values.

Everything here recomputes from first principles (plain BFS, exhaustive
enumeration, backtracking) and never calls the code paths it checks.
"""

from __future__ import annotations

import itertools
from collections import deque

from mirrorgraphs.graphs import Graph


def bfs_distances(g: Graph) -> list[list[int]]:
    """Plain-python BFS from every source."""
    out = []
    for src in range(g.n):
        dist = [-1] * g.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        out.append(dist)
    return out


def simple_cycles_upto(g: Graph, max_length: int) -> set[tuple[int, ...]]:
    """All simple cycles of length <= max_length, as canonical vertex tuples.

    DFS from each start vertex, only visiting vertices >= start so each cycle
    is found from its smallest vertex; orientation is fixed by the smaller
    second vertex.
    """
    cycles: set[tuple[int, ...]] = set()

    def canon(path: list[int]) -> tuple[int, ...]:
        if path[1] < path[-1]:
            return tuple(path)
        return (path[0],) + tuple(reversed(path[1:]))

    for start in range(g.n):
        stack = [(start, [start])]
        while stack:
            u, path = stack.pop()
            for w in g.adj[u]:
                if w == start and len(path) >= 3:
                    cycles.add(canon(path))
                elif w > start and w not in path and len(path) < max_length:
                    stack.append((w, path + [w]))
    return cycles


def is_convex_set(g: Graph, members: set[int]) -> bool:
    d = g.dist
    for x in members:
        for y in members:
            for w in range(g.n):
                if w not in members and d[x][w] + d[w][y] <= d[x][y]:
                    return False
    return True


def brute_convex_cycles(g: Graph, max_length: int = 12) -> set[frozenset[int]]:
    """Vertex sets of all convex cycles, by filtering every simple cycle."""
    out = set()
    for cyc in simple_cycles_upto(g, max_length):
        if is_convex_set(g, set(cyc)):
            out.add(frozenset(cyc))
    return out


def hypercube_embeddable(g: Graph, max_dim: int) -> bool:
    """Does any injective map into {0,1}^d, d <= max_dim, satisfy Hamming = dist?

    Exhaustive backtracking; fixing vertex 0 at the zero word loses nothing
    because hypercube translations are isometries.
    """
    d = g.dist
    for dim in range(1, max_dim + 1):
        words = list(range(1 << dim))
        image = [-1] * g.n
        image[0] = 0
        used = {0}

        def place(v: int) -> bool:
            if v == g.n:
                return True
            for w in words:
                if w in used:
                    continue
                if all(image[u] >= 0 and bin(w ^ image[u]).count("1") == d[v][u]
                       for u in range(v)):
                    image[v] = w
                    used.add(w)
                    if place(v + 1):
                        return True
                    used.discard(w)
                    image[v] = -1
            return False

        if place(1):
            return True
    return False


def permutation_equivalent(a, b) -> bool:
    """Are two square integer matrices equal up to one simultaneous permutation?"""
    k = len(a)
    if len(b) != k:
        return False
    for perm in itertools.permutations(range(k)):
        if all(a[i][j] == b[perm[i]][perm[j]] for i in range(k) for j in range(k)):
            return True
    return False

"""Brute-force ground truth at small scale: automorphisms, mirror test, isomorphism."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Edge, Graph
from .partial_cube import NotPartialCube, embed


class BudgetExceeded(Exception):
    pass


def _profiles(g: Graph) -> list[tuple[int, ...]]:
    return [tuple(sorted(int(x) for x in g.dist[v])) for v in range(g.n)]


def _bfs_order(g: Graph) -> list[int]:
    order = np.argsort(g.dist[0], kind="stable")
    return [int(v) for v in order]


def all_automorphisms(g: Graph, *, max_vertices: int = 100) -> list[tuple[int, ...]]:
    """Every adjacency-preserving vertex permutation, by pruned backtracking.

    Vertices are assigned in BFS order from 0; candidates must match the
    sorted distance-profile invariant and agree with every earlier assignment
    on pairwise distance, which preserving adjacency alone would already
    force but which prunes far earlier.
    """
    if g.n > max_vertices:
        raise BudgetExceeded(f"automorphism search capped at {max_vertices} vertices")
    profiles = _profiles(g)
    order = _bfs_order(g)
    parents: list[int | None] = [None] * g.n
    for v in order[1:]:
        parents[v] = next(w for w in g.adj[v] if g.dist[0][w] == g.dist[0][v] - 1)
    d = g.dist
    image = [-1] * g.n
    used = [False] * g.n
    assigned: list[int] = []
    results: list[tuple[int, ...]] = []

    def candidates(v: int):
        parent = parents[v]
        if parent is None:
            return [w for w in range(g.n) if profiles[w] == profiles[v]]
        return [w for w in g.adj[image[parent]] if profiles[w] == profiles[v]]

    def extend(pos: int) -> None:
        if pos == g.n:
            results.append(tuple(image))
            return
        v = order[pos]
        dv = d[v]
        for w in candidates(v):
            if used[w]:
                continue
            dw = d[w]
            if all(dv[a] == dw[image[a]] for a in assigned):
                image[v] = w
                used[w] = True
                assigned.append(v)
                extend(pos + 1)
                assigned.pop()
                used[w] = False
                image[v] = -1

    extend(0)
    return sorted(results)


@dataclass(frozen=True)
class BruteMirrorResult:
    is_mirror: bool
    reason: str
    classes: tuple[tuple[Edge, ...], ...] | None
    swap_automorphisms: tuple[tuple[tuple[int, ...], ...], ...] | None
    """Per class, every automorphism satisfying the literal mirror conditions."""


def brute_force_mirror(g: Graph, *, max_vertices: int = 16,
                       max_automorphisms: int = 10000) -> BruteMirrorResult:
    """Test the literal mirror-partition conditions against all automorphisms.

    The edge partition tested is the distance-relation partition (the only
    candidate, since mirror graphs embed isometrically in hypercubes); for
    each class the full automorphism list is searched for one that swaps the
    endpoints of every class edge and exchanges the two components left by
    deleting the class.
    """
    if g.n > max_vertices:
        raise BudgetExceeded(f"brute-force mirror test capped at {max_vertices} vertices")
    try:
        emb = embed(g)
    except NotPartialCube as exc:
        return BruteMirrorResult(False, f"not-partial-cube ({exc.reason})", None, None)
    autos = all_automorphisms(g, max_vertices=max_vertices)
    if len(autos) > max_automorphisms:
        raise BudgetExceeded(f"automorphism count {len(autos)} above cap")
    per_class: list[tuple[tuple[int, ...], ...]] = []
    for cls in emb.classes:
        comps = _components_without(g, set(cls))
        if len(comps) != 2:
            return BruteMirrorResult(False, f"deleting a class leaves {len(comps)} components",
                                     emb.classes, None)
        side_a, side_b = comps
        matching = tuple(
            alpha for alpha in autos
            if all(alpha[u] == v and alpha[v] == u for u, v in cls)
            and {alpha[x] for x in side_a} == side_b
        )
        if not matching:
            return BruteMirrorResult(False, "a class has no swap automorphism",
                                     emb.classes, None)
        per_class.append(matching)
    return BruteMirrorResult(True, "", emb.classes, tuple(per_class))


def _components_without(g: Graph, removed: set[Edge]) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(g.n):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                e = (u, w) if u < w else (w, u)
                if e in removed or w in comp:
                    continue
                comp.add(w)
                seen.add(w)
                stack.append(w)
        comps.append(comp)
    return comps


def are_isomorphic(g1: Graph, g2: Graph, *, max_vertices: int = 2000) -> tuple[int, ...] | None:
    """An adjacency-preserving bijection g1 -> g2, or None.

    Backtracking in BFS order with the same distance-consistency pruning as
    the automorphism search, run across the two graphs.
    """
    if max(g1.n, g2.n) > max_vertices:
        raise BudgetExceeded(f"isomorphism search capped at {max_vertices} vertices")
    if g1.n != g2.n or g1.m != g2.m:
        return None
    prof1, prof2 = _profiles(g1), _profiles(g2)
    if sorted(prof1) != sorted(prof2):
        return None
    order = _bfs_order(g1)
    parents: list[int | None] = [None] * g1.n
    for v in order[1:]:
        parents[v] = next(w for w in g1.adj[v] if g1.dist[0][w] == g1.dist[0][v] - 1)
    d1, d2 = g1.dist, g2.dist
    image = [-1] * g1.n
    used = [False] * g2.n
    assigned: list[int] = []

    def extend(pos: int) -> tuple[int, ...] | None:
        if pos == g1.n:
            return tuple(image)
        v = order[pos]
        parent = parents[v]
        if parent is None:
            pool = [w for w in range(g2.n) if prof2[w] == prof1[v]]
        else:
            pool = [w for w in g2.adj[image[parent]] if prof2[w] == prof1[v]]
        dv = d1[v]
        for w in pool:
            if used[w]:
                continue
            dw = d2[w]
            if all(dv[a] == dw[image[a]] for a in assigned):
                image[v] = w
                used[w] = True
                assigned.append(v)
                hit = extend(pos + 1)
                assigned.pop()
                used[w] = False
                image[v] = -1
                if hit is not None:
                    return hit
        return None

    return extend(0)

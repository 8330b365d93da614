"""Simple connected graphs on 0..n-1 with cached hop distances, plus JSON I/O."""

from __future__ import annotations

import json
from typing import IO

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

DEFAULT_DENSE_CAP = 5000

Edge = tuple[int, int]


class ParseError(Exception):
    """Input does not parse as the graph JSON schema."""


class ValidationError(Exception):
    """Parsed input violates a graph invariant (loop, duplicate, disconnected...)."""


class Graph:
    """Immutable simple connected graph with a dense all-pairs distance matrix.

    Vertices are the integers 0..n-1.  Edges are stored as sorted pairs in
    lexicographic order.  ``dist`` is an n-by-n int16 matrix of hop counts,
    computed once at construction and never mutated, so instances are safe to
    share across threads.
    """

    __slots__ = ("n", "edges", "edge_set", "adj", "dist", "diam")

    def __init__(self, n: int, edges: tuple[Edge, ...], adj: tuple[tuple[int, ...], ...],
                 dist: np.ndarray):
        self.n = n
        self.edges = edges
        self.edge_set = frozenset(edges)
        self.adj = adj
        dist.setflags(write=False)
        self.dist = dist
        self.diam = int(dist.max()) if n > 1 else 0

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _compute_distances(n: int, edges: tuple[Edge, ...]) -> np.ndarray:
    """All-pairs hop counts (one BFS per source, done in C via scipy)."""
    if n == 1:
        return np.zeros((1, 1), dtype=np.int16)
    rows = [u for u, v in edges] + [v for u, v in edges]
    cols = [v for u, v in edges] + [u for u, v in edges]
    sparse = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    out = np.empty((n, n), dtype=np.int16)
    # chunked so the float64 intermediate stays small for large n
    chunk = max(1, min(n, 512))
    for start in range(0, n, chunk):
        idx = np.arange(start, min(start + chunk, n))
        block = shortest_path(sparse, method="D", unweighted=True, indices=idx)
        if np.isinf(block).any():
            src = int(idx[np.isinf(block).any(axis=1).argmax()])
            far = int(np.isinf(block[src - start]).argmax())
            raise ValidationError(f"graph is disconnected: vertex {far} unreachable from {src}")
        out[start:start + chunk] = block.astype(np.int16)
    return out


def build_graph(n: int, edges, *, dense_cap: int = DEFAULT_DENSE_CAP) -> Graph:
    """Validate (n, edges) and return a Graph with distances computed.

    Raises ValidationError naming the offending element on loops, duplicate
    edges, out-of-range ids, or disconnected input.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"vertex count must be a positive integer, got {n!r}")
    if n > dense_cap:
        raise ValidationError(
            f"graph has {n} vertices, above the dense-distance cap {dense_cap}")
    seen: set[Edge] = set()
    canon: list[Edge] = []
    for e in edges:
        try:
            u, v = int(e[0]), int(e[1])
        except (TypeError, ValueError, IndexError):
            raise ParseError(f"edge {e!r} is not a pair of integers") from None
        if u == v:
            raise ValidationError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValidationError(f"duplicate edge ({key[0]},{key[1]})")
        seen.add(key)
        canon.append(key)
    canon.sort()
    adj_lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in canon:
        adj_lists[u].append(v)
        adj_lists[v].append(u)
    if n > 1:
        lonely = next((v for v in range(n) if not adj_lists[v]), None)
        if lonely is not None:
            raise ValidationError(f"graph is disconnected: vertex {lonely} has no edges")
    adj = tuple(tuple(sorted(nbrs)) for nbrs in adj_lists)
    dist = _compute_distances(n, tuple(canon))
    return Graph(n, tuple(canon), adj, dist)


def load_graph(source: str | bytes | IO, fmt: str = "edge-json", *,
               dense_cap: int = DEFAULT_DENSE_CAP) -> Graph:
    """Parse {"n": int, "edges": [[u,v], ...]} from a string, bytes, or stream."""
    if fmt != "edge-json":
        raise ParseError(f"unknown graph format {fmt!r}")
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        payload = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ParseError("top-level JSON value must be an object")
    if "n" not in payload or "edges" not in payload:
        raise ParseError('graph object needs "n" and "edges" keys')
    edges = payload["edges"]
    if not isinstance(edges, list):
        raise ParseError('"edges" must be a list of pairs')
    n = payload["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError('"n" must be an integer')
    return build_graph(n, edges, dense_cap=dense_cap)


def graph_payload(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def serialize_graph(g: Graph) -> str:
    return json.dumps(graph_payload(g), sort_keys=True, indent=2) + "\n"


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Hop-count matrix cached on the graph (read-only view)."""
    return g.dist


def is_bipartite(g: Graph) -> bool:
    return odd_cycle(g) is None


def odd_cycle(g: Graph) -> list[int] | None:
    """A closed odd walk witnessing non-bipartiteness, or None.

    BFS layering from vertex 0; an edge inside one layer closes an odd cycle
    through the two root paths.
    """
    level = g.dist[0]
    parent = [-1] * g.n
    for v in range(1, g.n):
        parent[v] = next(u for u in g.adj[v] if level[u] == level[v] - 1)
    for u, v in g.edges:
        if level[u] != level[v]:
            continue
        pu, pv = u, v
        left, right = [pu], [pv]
        while pu != pv:
            pu, pv = parent[pu], parent[pv]
            left.append(pu)
            right.append(pv)
        return left[::-1] + right  # apex .. u, edge uv, v .. apex (closed)
    return None


# -- small constructions used by the example registry and tests --------------

def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError(f"cycle needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def hypercube_graph(d: int) -> Graph:
    if d < 0:
        raise ValidationError("hypercube dimension must be nonnegative")
    n = 1 << d
    edges = [(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)]
    return build_graph(n, edges)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return complete_bipartite_graph(1, leaves)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian graph product; vertex (i, j) becomes i * h.n + j."""
    edges = [(u * h.n + j, v * h.n + j) for u, v in g.edges for j in range(h.n)]
    edges += [(i * h.n + u, i * h.n + v) for u, v in h.edges for i in range(g.n)]
    return build_graph(g.n * h.n, edges)

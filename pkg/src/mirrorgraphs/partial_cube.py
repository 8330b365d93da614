"""Edge classes of the distance relation, hypercube embedding, half-spaces."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Edge, Graph, odd_cycle


class NotPartialCube(Exception):
    """Raised when a graph admits no isometric hypercube embedding.

    ``reason`` is one of "odd-cycle", "isometry-violation", "cut-violation";
    ``witness`` re-checks against the input graph (an odd closed walk, a
    vertex pair with Hamming != hop distance, or a class index).
    """

    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a partial cube ({reason}): witness={witness!r}")


def theta_related(g: Graph, e: Edge, f: Edge) -> bool:
    """Literal distance test: ab ~ xy iff d(a,x)+d(b,y) != d(a,y)+d(b,x)."""
    a, b = e
    x, y = f
    d = g.dist
    return int(d[a, x]) + int(d[b, y]) != int(d[a, y]) + int(d[b, x])


def theta_classes(g: Graph) -> list[list[Edge]]:
    """Partition the edges into components of the distance relation.

    On a bipartite graph the relation between edges ab and xy reduces to "x
    and y lie on different sides of ab's closer-to-a/closer-to-b split", which
    lets one boolean row per distinct split decide the whole relation.  Taking
    connected components (the transitive closure) keeps the operation total on
    bipartite inputs that are not partial cubes.

    Classes are sorted internally and indexed by their smallest edge.
    """
    witness = odd_cycle(g)
    if witness is not None:
        raise NotPartialCube("odd-cycle", witness=witness)
    m = g.m
    if m == 0:
        return []
    ex = np.fromiter((e[0] for e in g.edges), dtype=np.intp, count=m)
    ey = np.fromiter((e[1] for e in g.edges), dtype=np.intp, count=m)
    closer = g.dist[ex] < g.dist[ey]  # (m, n); no ties on bipartite graphs

    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    # edges sharing a split (up to complement) are pairwise related
    groups: dict[bytes, int] = {}
    reps: list[int] = []
    for i in range(m):
        row = closer[i]
        key = min(row.tobytes(), (~row).tobytes())
        if key in groups:
            union(groups[key], i)
        else:
            groups[key] = i
            reps.append(i)
    # one relation row per distinct split decides membership for the rest
    for i in reps:
        hits = np.nonzero(closer[i][ex] != closer[i][ey])[0]
        for j in hits:
            union(i, int(j))

    buckets: dict[int, list[Edge]] = {}
    for i in range(m):
        buckets.setdefault(find(i), []).append(g.edges[i])
    classes = sorted((sorted(edges) for edges in buckets.values()), key=lambda c: c[0])
    return classes


@dataclass(frozen=True)
class ThetaEmbedding:
    """A verified isometric hypercube embedding of a graph.

    ``coords[v]`` is a k-bit mask: bit i flips exactly across the edges of
    class i.  ``sides[i]`` holds the two vertex sets of the class-i cut
    (side 0 contains vertex 0), ``boundaries[i]`` the vertices with a
    neighbor across it.
    """

    graph: Graph
    k: int
    classes: tuple[tuple[Edge, ...], ...]
    class_of: dict[Edge, int]
    coords: tuple[int, ...]
    sides: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    boundaries: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    coord_index: dict[int, int] = field(repr=False)

    def side_bit(self, class_index: int, v: int) -> int:
        return (self.coords[v] >> class_index) & 1

    def coord_bits(self, v: int) -> str:
        """Bit string indexed by class (class 0 first)."""
        return format(self.coords[v], f"0{self.k}b")[::-1] if self.k else ""

    @staticmethod
    def from_parts(g: Graph, classes, coords) -> "ThetaEmbedding":
        """Assemble an embedding from its class partition and coordinates.

        Performs no validation; pair with ``verify_certificate`` when the
        parts come from an untrusted certificate.
        """
        classes = tuple(tuple(tuple(e) for e in cls) for cls in classes)
        coords = tuple(int(c) for c in coords)
        class_of = {e: i for i, cls in enumerate(classes) for e in cls}
        k = len(classes)
        sides = []
        boundaries = []
        for i, cls in enumerate(classes):
            s0 = tuple(v for v in range(g.n) if not (coords[v] >> i) & 1)
            s1 = tuple(v for v in range(g.n) if (coords[v] >> i) & 1)
            u0 = tuple(sorted({u if not (coords[u] >> i) & 1 else v for u, v in cls}))
            u1 = tuple(sorted({v if (coords[v] >> i) & 1 else u for u, v in cls}))
            sides.append((s0, s1))
            boundaries.append((u0, u1))
        return ThetaEmbedding(
            graph=g, k=k, classes=classes, class_of=class_of, coords=coords,
            sides=tuple(sides), boundaries=tuple(boundaries),
            coord_index={c: v for v, c in enumerate(coords)},
        )


def _coords_by_bfs(g: Graph, class_of: dict[Edge, int]) -> list[int]:
    """Root at vertex 0 with the zero vector; flip a class bit per tree edge."""
    coords = [0] * g.n
    order = np.argsort(g.dist[0], kind="stable")
    for v in order[1:]:
        v = int(v)
        u = next(w for w in g.adj[v] if g.dist[0][w] == g.dist[0][v] - 1)
        e = (u, v) if u < v else (v, u)
        coords[v] = coords[u] ^ (1 << class_of[e])
    return coords


def check_isometry(g: Graph, coords, k: int) -> tuple[int, int] | None:
    """First vertex pair (row-major) with Hamming(coords) != hop distance."""
    n = g.n
    if k == 0:
        return None if n == 1 else (0, 1)
    bits = np.zeros((n, k), dtype=np.float32)
    for v in range(n):
        c = coords[v]
        for j in range(k):
            if (c >> j) & 1:
                bits[v, j] = 1.0
    inv = 1.0 - bits
    chunk = max(1, min(n, 2048))
    for start in range(0, n, chunk):
        rows = slice(start, min(start + chunk, n))
        ham = bits[rows] @ inv.T + inv[rows] @ bits.T
        bad = ham != g.dist[rows].astype(np.float32)
        if bad.any():
            u, v = np.argwhere(bad)[0]
            return (int(u) + start, int(v))
    return None


def embed(g: Graph) -> ThetaEmbedding:
    """Compute the verified embedding, or raise NotPartialCube.

    Coordinates are assigned from vertex 0 and then checked pairwise, so any
    ill-defined crossing parity surfaces as an isometry violation.
    """
    classes = theta_classes(g)
    class_of = {e: i for i, cls in enumerate(classes) for e in cls}
    coords = _coords_by_bfs(g, class_of)
    bad = check_isometry(g, coords, len(classes))
    if bad is not None:
        raise NotPartialCube("isometry-violation", witness=bad)
    emb = ThetaEmbedding.from_parts(g, classes, coords)
    _check_cuts(emb)
    return emb


def _check_cuts(e: ThetaEmbedding) -> None:
    """Each class removed must leave exactly the two coordinate sides."""
    g = e.graph
    for i in range(e.k):
        for side in e.sides[i]:
            members = set(side)
            seen = {side[0]}
            stack = [side[0]]
            while stack:
                u = stack.pop()
                for w in g.adj[u]:
                    if w in members and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen != members:
                raise NotPartialCube("cut-violation", witness=i)


def antipode_map(e: ThetaEmbedding) -> tuple[int, ...] | None:
    """Map v to the vertex with complemented coordinates, if total."""
    full = (1 << e.k) - 1
    out = []
    for v in range(e.graph.n):
        w = e.coord_index.get(e.coords[v] ^ full)
        if w is None:
            return None
        out.append(w)
    return tuple(out)


def is_harmonic_even(e: ThetaEmbedding) -> bool:
    """True iff every vertex has a vertex at distance k (the antipode map is total)."""
    am = antipode_map(e)
    if am is None:
        return False
    g = e.graph
    for v in range(g.n):
        if am[am[v]] != v:
            raise RuntimeError(f"antipode map not involutive at vertex {v}")
    for u, v in g.edges:
        if not g.has_edge(am[u], am[v]):
            raise RuntimeError(f"antipodes of edge ({u},{v}) are not adjacent")
    return True


def interval(g: Graph, u: int, v: int) -> list[int]:
    """Vertices on some shortest u,v-path."""
    hits = np.nonzero(g.dist[u] + g.dist[v] == g.dist[u][v])[0]
    return [int(w) for w in hits]


def embedding_payload(e: ThetaEmbedding) -> dict:
    return {
        "k": e.k,
        "class_of": {f"{u}-{v}": i for (u, v), i in sorted(e.class_of.items())},
        "coords": [e.coord_bits(v) for v in range(e.graph.n)],
    }

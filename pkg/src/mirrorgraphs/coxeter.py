"""Coxeter matrix extraction from certificates and finite-type classification."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .graphs import Graph
from .recognition import MirrorCertificate


class StructureError(Exception):
    """Certificate structure contradicts what a verified mirror graph guarantees."""


class NotFiniteType(Exception):
    """A diagram component matches no finite-type catalog entry."""

    def __init__(self, component: tuple[int, ...], detail: str = ""):
        self.component = component
        super().__init__(f"component {list(component)} is not of finite type"
                         + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric integer matrix with unit diagonal and off-diagonal entries >= 2."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != k:
                raise ValueError("matrix must be square")
            if row[i] != 1:
                raise ValueError(f"diagonal entry ({i},{i}) must be 1, got {row[i]}")
            for j, val in enumerate(row):
                if not isinstance(val, int):
                    raise ValueError(f"entry ({i},{j}) must be an integer")
                if i != j and val < 2:
                    raise ValueError(f"off-diagonal entry ({i},{j}) must be >= 2")
                if val != self.entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    @staticmethod
    def from_rows(rows) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(int(x) for x in row) for row in rows))

    def payload(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


Factor = tuple[str, int]  # (family, rank) with the I2 parameter standing in for rank


@dataclass(frozen=True)
class CoxeterType:
    """Finite type as a sorted product of irreducible factors with its group order."""

    factors: tuple[Factor, ...]
    order: int

    @property
    def name(self) -> str:
        if not self.factors:
            return "trivial"
        return " x ".join(_factor_name(f) for f in self.factors)

    def payload(self) -> dict:
        return {"factors": [list(f) for f in self.factors],
                "type": self.name, "predicted_order": self.order}


def _factor_name(f: Factor) -> str:
    family, n = f
    return f"I2({n})" if family == "I2" else f"{family}{n}"


def _factor_rank(f: Factor) -> int:
    return 2 if f[0] == "I2" else f[1]


def factor_order(family: str, n: int) -> int:
    if family == "A":
        return math.factorial(n + 1)
    if family == "B":
        return (1 << n) * math.factorial(n)
    if family == "D":
        return (1 << (n - 1)) * math.factorial(n)
    if family == "I2":
        return 2 * n
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if family == "F":
        return 1152
    if family == "H":
        return {3: 120, 4: 14400}[n]
    raise ValueError(f"unknown family {family!r}")


def extract_coxeter_matrix(g: Graph, cert: MirrorCertificate, base: int = 0) -> CoxeterMatrix:
    """Read the matrix off the convex cycles through the base vertex.

    Generators are the classes of the edges at ``base`` (class-index order);
    the entry for a generator pair is half the length of the unique convex
    cycle through both incident edges.
    """
    e = cert.embedding
    incident = []
    for w in g.adj[base]:
        edge = (base, w) if base < w else (w, base)
        incident.append((e.class_of[edge], edge))
    incident.sort()
    if len({c for c, _ in incident}) != len(incident):
        raise StructureError(f"two edges at vertex {base} share a class")
    rank = len(incident)
    cycles_by_edge: dict[tuple[int, int], list[int]] = {}
    for ci, cyc in enumerate(cert.convex_cycles):
        for j in range(cyc.length):
            cycles_by_edge.setdefault(cyc.edge(j), []).append(ci)
    rows = [[1] * rank for _ in range(rank)]
    for s in range(rank):
        for t in range(s + 1, rank):
            shared = set(cycles_by_edge.get(incident[s][1], ())) \
                & set(cycles_by_edge.get(incident[t][1], ()))
            if len(shared) != 1:
                raise StructureError(
                    f"expected exactly one convex cycle through edges "
                    f"{incident[s][1]} and {incident[t][1]}, found {len(shared)}")
            half = cert.convex_cycles[shared.pop()].half
            if half < 2:
                raise StructureError("convex cycle shorter than 4")
            rows[s][t] = rows[t][s] = half
    return CoxeterMatrix.from_rows(rows)


def classify(m: CoxeterMatrix) -> CoxeterType:
    """Match the diagram against the finite-type catalog; raise NotFiniteType otherwise."""
    k = m.rank
    nbrs: dict[int, dict[int, int]] = {i: {} for i in range(k)}
    for i in range(k):
        for j in range(i + 1, k):
            if m[i, j] >= 3:
                nbrs[i][j] = nbrs[j][i] = m[i, j]
    seen: set[int] = set()
    factors: list[Factor] = []
    for start in range(k):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            u = queue.pop()
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        factors.append(_classify_component(tuple(sorted(comp)), nbrs))
    factors.sort(key=lambda f: (-_factor_rank(f), f[0], -f[1]))
    order = math.prod(factor_order(*f) for f in factors)
    return CoxeterType(factors=tuple(factors), order=order)


def _classify_component(comp: tuple[int, ...], nbrs) -> Factor:
    size = len(comp)
    if size == 1:
        return ("A", 1)
    edge_count = sum(len(nbrs[u]) for u in comp) // 2
    if edge_count != size - 1:
        raise NotFiniteType(comp, "diagram component contains a cycle")
    if size == 2:
        label = nbrs[comp[0]][comp[1]]
        if label == 3:
            return ("A", 2)
        if label == 4:
            return ("B", 2)
        return ("I2", label)
    degrees = {u: len(nbrs[u]) for u in comp}
    if any(d > 3 for d in degrees.values()):
        raise NotFiniteType(comp, "vertex of degree > 3")
    branch = [u for u in comp if degrees[u] == 3]
    if len(branch) > 1:
        raise NotFiniteType(comp, "more than one branch vertex")
    if branch:
        center = branch[0]
        if any(lab != 3 for u in comp for lab in nbrs[u].values()):
            raise NotFiniteType(comp, "branched diagram with a label > 3")
        arms = []
        for first in nbrs[center]:
            ln, prev, cur = 1, center, first
            while degrees[cur] == 2:
                nxt = next(w for w in nbrs[cur] if w != prev)
                prev, cur = cur, nxt
                ln += 1
            arms.append(ln)
        arms.sort()
        if arms[:2] == [1, 1]:
            return ("D", arms[2] + 3)
        if arms == [1, 2, 2]:
            return ("E", 6)
        if arms == [1, 2, 3]:
            return ("E", 7)
        if arms == [1, 2, 4]:
            return ("E", 8)
        raise NotFiniteType(comp, f"branch arms {arms} match no catalog entry")
    # a path: read the labels end to end
    end = next(u for u in comp if degrees[u] == 1)
    labels = []
    prev, cur = None, end
    while True:
        nxt = next((w for w in nbrs[cur] if w != prev), None)
        if nxt is None:
            break
        labels.append(nbrs[cur][nxt])
        prev, cur = cur, nxt
    if labels[0] < labels[-1]:
        labels.reverse()
    big = [lab for lab in labels if lab > 3]
    if not big:
        return ("A", size)
    if len(big) > 1:
        raise NotFiniteType(comp, "more than one label > 3 on a path")
    pos = labels.index(big[0])
    if big[0] == 4:
        if pos == 0:
            return ("B", size)
        if pos == 1 and size == 4:
            return ("F", 4)
        raise NotFiniteType(comp, "label 4 away from the end")
    if big[0] == 5 and pos == 0 and size in (3, 4):
        return ("H", size)
    raise NotFiniteType(comp, f"path labels {labels} match no catalog entry")


def check_order(g: Graph, t: CoxeterType) -> bool:
    return g.n == t.order


_TOKEN = re.compile(r"^(?:([ABDEFH])(\d+)|I2[\(_]?(\d+)\)?)$", re.IGNORECASE)


def coxeter_matrix_from_type(name: str) -> CoxeterMatrix:
    """Build the matrix for a product type name like "A3", "I2_7", or "B3xA1".

    Factors are separated by "x"; "^p" repeats a factor.  I2(3) and I2(4) are
    accepted and coincide with A2 and B2.
    """
    blocks: list[list[list[int]]] = []
    for raw in name.replace(" ", "").split("x"):
        token, _, power = raw.partition("^")
        reps = int(power) if power else 1
        if reps < 1:
            raise ValueError(f"bad repetition in {raw!r}")
        match = _TOKEN.match(token)
        if not match:
            raise ValueError(f"cannot parse Coxeter type {token!r}")
        if match.group(3) is not None:
            family, n = "I2", int(match.group(3))
        else:
            family, n = match.group(1).upper(), int(match.group(2))
        for _ in range(reps):
            blocks.append(_component_matrix(family, n))
    rank = sum(len(b) for b in blocks)
    rows = [[2] * rank for _ in range(rank)]
    offset = 0
    for block in blocks:
        sz = len(block)
        for i in range(sz):
            for j in range(sz):
                rows[offset + i][offset + j] = block[i][j]
        offset += sz
    return CoxeterMatrix.from_rows(rows)


def _component_matrix(family: str, n: int) -> list[list[int]]:
    def blank(sz: int) -> list[list[int]]:
        return [[1 if i == j else 2 for j in range(sz)] for i in range(sz)]

    def put(rows, i, j, val):
        rows[i][j] = rows[j][i] = val

    if family == "I2":
        if n < 2:
            raise ValueError("I2 parameter must be >= 2")
        rows = blank(2)
        put(rows, 0, 1, n)
        return rows
    if family == "A":
        if n < 1:
            raise ValueError("A rank must be >= 1")
        rows = blank(n)
        for i in range(n - 1):
            put(rows, i, i + 1, 3)
        return rows
    if family == "B":
        if n < 2:
            raise ValueError("B rank must be >= 2")
        rows = blank(n)
        for i in range(n - 1):
            put(rows, i, i + 1, 3)
        put(rows, n - 2, n - 1, 4)
        return rows
    if family == "D":
        if n < 4:
            raise ValueError("D rank must be >= 4")
        rows = blank(n)
        for i in range(n - 2):
            put(rows, i, i + 1, 3)
        put(rows, n - 3, n - 1, 3)
        return rows
    if family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E rank must be 6, 7, or 8")
        rows = blank(n)
        for i in range(n - 2):
            put(rows, i, i + 1, 3)
        put(rows, 2, n - 1, 3)
        return rows
    if family == "F":
        if n != 4:
            raise ValueError("F rank must be 4")
        rows = blank(4)
        put(rows, 0, 1, 3)
        put(rows, 1, 2, 4)
        put(rows, 2, 3, 3)
        return rows
    if family == "H":
        if n not in (3, 4):
            raise ValueError("H rank must be 3 or 4")
        rows = blank(n)
        put(rows, 0, 1, 5)
        for i in range(1, n - 1):
            put(rows, i, i + 1, 3)
        return rows
    raise ValueError(f"unknown family {family!r}")

"""Reflection groups: Cayley graphs, reflection arrangements, and tope graphs."""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass

import numpy as np

from .coxeter import CoxeterMatrix, classify, coxeter_matrix_from_type
from .graphs import (
    Graph,
    build_graph,
    cartesian_product,
    complete_bipartite_graph,
    cycle_graph,
    hypercube_graph,
    path_graph,
    star_graph,
)

DEFAULT_BUDGET = 20000
MATCH_TOL = 1e-7


class ZeroNormal(Exception):
    pass


class ArrangementError(Exception):
    pass


class NotReflectionArrangement(Exception):
    pass


class GroupBudgetExceeded(Exception):
    pass


class DegeneracyUnresolved(Exception):
    pass


class NumericalCollision(Exception):
    """Two distinct group elements landed on one rounding key (tolerance failure)."""


class UnknownName(Exception):
    pass


def reflection(v) -> np.ndarray:
    """Householder matrix of the hyperplane orthogonal to v."""
    v = np.asarray(v, dtype=np.float64)
    nrm = float(v @ v)
    if nrm == 0.0:
        raise ZeroNormal("reflection normal must be nonzero")
    return np.eye(v.size) - 2.0 * np.outer(v, v) / nrm


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes through the origin, one normal vector per row."""

    dim: int
    normals: np.ndarray

    def __post_init__(self):
        normals = np.asarray(self.normals, dtype=np.float64)
        if normals.ndim != 2 or normals.shape[1] != self.dim or normals.shape[0] < 1:
            raise ArrangementError(
                f"normals must be a nonempty m x {self.dim} array")
        lengths = np.linalg.norm(normals, axis=1)
        if (lengths == 0).any():
            raise ArrangementError(f"normal {int((lengths == 0).argmax())} is zero")
        units = normals / lengths[:, None]
        dots = np.abs(units @ units.T)
        np.fill_diagonal(dots, 0.0)
        if (dots >= 1.0 - 1e-9).any():
            i, j = np.argwhere(dots >= 1.0 - 1e-9)[0]
            raise ArrangementError(f"normals {int(i)} and {int(j)} are parallel")
        normals.setflags(write=False)
        object.__setattr__(self, "normals", normals)

    @property
    def m(self) -> int:
        return self.normals.shape[0]

    def payload(self) -> dict:
        return {"dim": self.dim, "normals": [list(map(float, row)) for row in self.normals]}


def arrangement_from_payload(payload: dict) -> Arrangement:
    if not isinstance(payload, dict) or "dim" not in payload or "normals" not in payload:
        raise ArrangementError('arrangement object needs "dim" and "normals" keys')
    return Arrangement(dim=int(payload["dim"]),
                       normals=np.asarray(payload["normals"], dtype=np.float64))


def is_reflection_arrangement(a: Arrangement, tol: float = 1e-8) -> bool:
    """True iff each hyperplane's reflection permutes the normals (up to sign)."""
    units = a.normals / np.linalg.norm(a.normals, axis=1)[:, None]
    for i in range(a.m):
        images = units @ reflection(a.normals[i]).T
        best = np.abs(images @ units.T).max(axis=1)
        if (best < 1.0 - tol).any():
            return False
    return True


def matrix_group_closure(generators, budget: int, tol: float = MATCH_TOL):
    """Orbit of the identity under left multiplication, with loud dedup.

    Returns (matrices, transitions) where transitions are (element, generator,
    product) index triples in deterministic BFS order.  Elements are matched
    within ``tol`` entrywise; lookups go through a sorted scalar projection so
    that accumulated rounding error can never split one element in two (exact
    hash keys do fragment at the 14400-element scale).  Two stored elements
    matching one product is reported, never merged silently.
    """
    dim = generators[0].shape[0]
    rng = np.random.default_rng(1203981205)
    left = rng.standard_normal(dim)
    right = rng.standard_normal(dim)
    window = 1e-5

    ident = np.eye(dim)
    mats: list[np.ndarray] = [ident]
    scores: list[float] = [float(left @ ident @ right)]
    by_score: list[tuple[float, int]] = [(scores[0], 0)]
    transitions: list[tuple[int, int, int]] = []

    def lookup(product: np.ndarray, score: float) -> int | None:
        lo = bisect.bisect_left(by_score, (score - window, -1))
        hi = bisect.bisect_right(by_score, (score + window, len(mats)))
        hits = [idx for _, idx in by_score[lo:hi]
                if np.abs(product - mats[idx]).max() <= tol]
        if len(hits) > 1:
            raise NumericalCollision(
                f"elements {hits} are indistinguishable within {tol}")
        return hits[0] if hits else None

    head = 0
    while head < len(mats):
        current = mats[head]
        for gi, gen in enumerate(generators):
            product = gen @ current
            score = float(left @ product @ right)
            target = lookup(product, score)
            if target is None:
                if len(mats) >= budget:
                    raise GroupBudgetExceeded(
                        f"group closure exceeds the element cap {budget}")
                target = len(mats)
                mats.append(product)
                scores.append(score)
                bisect.insort(by_score, (score, target))
            transitions.append((head, gi, target))
        head += 1
    return mats, transitions


def generate_cayley(m: CoxeterMatrix, *, budget: int = DEFAULT_BUDGET) -> Graph:
    """Cayley graph of the finite Coxeter group presented by the matrix.

    Generators act on the root-space coordinates through the bilinear form
    B_ij = -cos(pi / m_ij); elements are enumerated by BFS closure from the
    identity, numbering vertices in discovery order (identity = 0).
    """
    ctype = classify(m)  # NotFiniteType propagates
    if ctype.order > budget:
        raise GroupBudgetExceeded(
            f"group of type {ctype.name} has order {ctype.order}, above budget {budget}")
    k = m.rank
    if k == 0:
        return build_graph(1, [])
    bform = np.array([[-np.cos(np.pi / m[i, j]) for j in range(k)] for i in range(k)])
    generators = []
    for i in range(k):
        gen = np.eye(k)
        gen[i, :] -= 2.0 * bform[i, :]
        generators.append(gen)
    mats, transitions = matrix_group_closure(generators, budget)
    if len(mats) != ctype.order:
        raise NumericalCollision(
            f"closure found {len(mats)} elements but type {ctype.name} "
            f"has order {ctype.order}")
    edges = {(u, v) if u < v else (v, u) for u, _, v in transitions}
    return build_graph(len(mats), sorted(edges), dense_cap=max(len(mats), 5000))


def tope_graph(a: Arrangement, *, seed: int = 0, budget: int = DEFAULT_BUDGET,
               tol: float = MATCH_TOL) -> tuple[Graph, list[str]]:
    """Chamber-adjacency graph of a reflection arrangement, with sign vectors.

    Chambers are the orbit of a generic point under the closure of the
    hyperplane reflections, keyed by the signs against every normal; vertices
    join when the signs differ in one place.  The generic point comes from the
    seed and is retried (seed+1, ...) while any orbit point sits too close to
    a hyperplane.
    """
    if not is_reflection_arrangement(a):
        raise NotReflectionArrangement(
            "some hyperplane reflection does not permute the arrangement")
    gens = [reflection(v) for v in a.normals]
    mats, _ = matrix_group_closure(gens, budget)
    stacked = np.stack(mats)
    for attempt in range(64):
        rng = np.random.default_rng(seed + attempt)
        point = rng.standard_normal(a.dim)
        orbit = stacked @ point
        values = orbit @ a.normals.T  # (elements, hyperplanes)
        margin = 1e-6 * max(1.0, float(np.abs(values).max()))
        if np.abs(values).min() > margin:
            break
    else:
        raise DegeneracyUnresolved(
            f"no generic point found after 64 attempts from seed {seed}")
    signs = values > 0
    keys = [row.tobytes() for row in signs]
    index: dict[bytes, int] = {}
    for key in keys:
        if key in index:
            raise DegeneracyUnresolved("orbit points collide in one chamber")
        index[key] = len(index)
    edges = set()
    for vi, row in enumerate(signs):
        for h in range(a.m):
            flipped = row.copy()
            flipped[h] = not flipped[h]
            other = index.get(flipped.tobytes())
            if other is not None and other != vi:
                edges.add((vi, other) if vi < other else (other, vi))
    graph = build_graph(len(keys), sorted(edges), dense_cap=max(len(keys), 5000))
    sign_strings = ["".join("+" if s else "-" for s in row) for row in signs]
    return graph, sign_strings


_ARRANGEMENT_TOKEN = re.compile(r"^(?:([ABD])(\d+)|I2[\(_]?(\d+)\)?)$", re.IGNORECASE)


def standard_arrangement(name: str) -> Arrangement:
    """Shipped reflection arrangements: A_n, B_n, D_n, and I2(m).

    A_n uses the difference vectors e_i - e_j in n+1 coordinates; B_n adds
    e_i + e_j and the axes; D_n drops the axes; I2(m) takes plane normals at
    angles j*pi/m.  Each result is checked to be a reflection arrangement.
    """
    match = _ARRANGEMENT_TOKEN.match(name.replace(" ", ""))
    if not match:
        raise UnknownName(f"no standard arrangement named {name!r}")
    normals: list[list[float]] = []
    if match.group(3) is not None:
        m = int(match.group(3))
        if m < 2:
            raise UnknownName("I2 arrangement needs parameter >= 2")
        normals = [[np.cos(j * np.pi / m), np.sin(j * np.pi / m)] for j in range(m)]
        dim = 2
    else:
        family, n = match.group(1).upper(), int(match.group(2))
        if family == "A":
            if n < 1:
                raise UnknownName("A arrangement needs rank >= 1")
            dim = n + 1
            for i in range(dim):
                for j in range(i + 1, dim):
                    normals.append(_axis_pair(dim, i, j, -1.0))
        elif family == "B":
            if n < 2:
                raise UnknownName("B arrangement needs rank >= 2")
            dim = n
            for i in range(n):
                for j in range(i + 1, n):
                    normals.append(_axis_pair(n, i, j, -1.0))
                    normals.append(_axis_pair(n, i, j, 1.0))
                e = [0.0] * n
                e[i] = 1.0
                normals.append(e)
        else:
            if n < 4:
                raise UnknownName("D arrangement needs rank >= 4")
            dim = n
            for i in range(n):
                for j in range(i + 1, n):
                    normals.append(_axis_pair(n, i, j, -1.0))
                    normals.append(_axis_pair(n, i, j, 1.0))
    arrangement = Arrangement(dim=dim, normals=np.asarray(normals))
    if not is_reflection_arrangement(arrangement):
        raise NotReflectionArrangement(f"internal: {name} failed the closure check")
    return arrangement


def _axis_pair(dim: int, i: int, j: int, sign: float) -> list[float]:
    row = [0.0] * dim
    row[i] = 1.0
    row[j] = sign
    return row


_NAME_PATTERNS = (
    (re.compile(r"^Q(\d+)$", re.IGNORECASE), lambda d, _b: hypercube_graph(d)),
    (re.compile(r"^C(\d+)$", re.IGNORECASE), lambda n, _b: cycle_graph(n)),
    (re.compile(r"^path(\d+)$", re.IGNORECASE), lambda n, _b: path_graph(n)),
    (re.compile(r"^star(\d+)$", re.IGNORECASE), lambda n, _b: star_graph(n)),
    (re.compile(r"^prism(\d+)$", re.IGNORECASE),
     lambda n, _b: cartesian_product(cycle_graph(n), path_graph(2))),
)


def named_example(name: str, *, budget: int = DEFAULT_BUDGET) -> Graph:
    """Deterministic example graphs by name: Q3, C10, path4, K23, prism6,

    permutahedron, or any finite Coxeter type name (A3, B3, H3, F4, I2_7,
    A1^3, A2xA1, ...).
    """
    stripped = name.strip()
    if stripped.lower() == "k23":
        return complete_bipartite_graph(2, 3)
    if stripped.lower() == "permutahedron":
        return generate_cayley(coxeter_matrix_from_type("A3"), budget=budget)
    for pattern, builder in _NAME_PATTERNS:
        match = pattern.match(stripped)
        if match:
            try:
                return builder(int(match.group(1)), budget)
            except Exception as exc:
                raise UnknownName(f"cannot build {name!r}: {exc}") from None
    try:
        matrix = coxeter_matrix_from_type(stripped)
    except ValueError:
        raise UnknownName(f"no example named {name!r}") from None
    return generate_cayley(matrix, budget=budget)

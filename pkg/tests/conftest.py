"""Shared corpus of small graphs with known or oracle-decidable verdicts."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mirrorgraphs.graphs import (
    Graph,
    build_graph,
    cartesian_product,
    complete_bipartite_graph,
    cycle_graph,
    hypercube_graph,
    path_graph,
    star_graph,
)

# Chamber graph of the generic (non-reflection) central arrangement
# {x=0, y=0, z=0, x+y+z=0}: harmonic-even partial cube that is not mirror.
GENERIC_ARRANGEMENT_14_EDGES = (
    (0, 1), (0, 3), (0, 7), (1, 2), (1, 5), (1, 9), (2, 6), (2, 10),
    (3, 4), (3, 5), (3, 11), (4, 6), (4, 12), (5, 6), (6, 13), (7, 8),
    (7, 9), (7, 11), (8, 10), (8, 12), (9, 10), (10, 13), (11, 12), (12, 13),
)


def generic_arrangement_graph() -> Graph:
    return build_graph(14, GENERIC_ARRANGEMENT_14_EDGES)


def downset_partial_cube(dim: int, seed: int) -> Graph:
    """Induced subgraph of a hypercube on a random downward-closed vertex set.

    Downsets induce isometric subgraphs (walk down to the meet, then up), so
    these are partial cubes by construction; a linear congruential generator
    keeps the corpus identical everywhere.
    """
    state = seed * 2654435761 % 2**32
    picks = []
    for word in range(1 << dim):
        state = (1103515245 * state + 12345) % 2**31
        if state / 2**31 < 0.35:
            picks.append(word)
    members = {0}
    for word in picks:
        sub = word
        while True:
            members.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & word
    labels = {word: i for i, word in enumerate(sorted(members))}
    edges = []
    for word in members:
        for bit in range(dim):
            other = word ^ (1 << bit)
            if other in members and word < other:
                edges.append((labels[word], labels[other]))
    return build_graph(len(members), edges)


def spider_tree() -> Graph:
    # three legs of lengths 1, 1, 2 from a center: a tree with 3 leaves
    return build_graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])


def oracle_corpus() -> list[tuple[str, Graph]]:
    """>= 30 graphs with n <= 16 mixing mirror, non-mirror, and non-partial-cube."""
    corpus: list[tuple[str, Graph]] = []
    for d in (1, 2, 3, 4):
        corpus.append((f"Q{d}", hypercube_graph(d)))
    for n in (4, 6, 8, 10, 12, 14, 16):
        corpus.append((f"C{n}", cycle_graph(n)))
    for n in (2, 3, 4, 5, 6):
        corpus.append((f"path{n}", path_graph(n)))
    corpus.append(("star3", star_graph(3)))
    corpus.append(("star4", star_graph(4)))
    corpus.append(("spider", spider_tree()))
    corpus.append(("K23", complete_bipartite_graph(2, 3)))
    corpus.append(("C5", cycle_graph(5)))
    corpus.append(("prism6", cartesian_product(cycle_graph(6), path_graph(2))))
    corpus.append(("prism8", cartesian_product(cycle_graph(8), path_graph(2))))
    corpus.append(("genericarr14", generic_arrangement_graph()))
    for seed in range(1, 9):
        corpus.append((f"downset{seed}", downset_partial_cube(4, seed)))
    assert len(corpus) >= 30
    assert all(g.n <= 16 for _, g in corpus)
    return corpus


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, Graph]]:
    return oracle_corpus()


@pytest.fixture(scope="session")
def small_accepted(corpus):
    """Corpus graphs accepted by recognition, with their certificates."""
    from mirrorgraphs.recognition import MirrorCertificate, recognize

    out = []
    for name, g in corpus:
        result = recognize(g)
        if isinstance(result, MirrorCertificate):
            out.append((name, g, result))
    return out

"""Seeded random graphs and trees shared by the tests."""

from __future__ import annotations

import random
from functools import lru_cache

from graphbraid.graph_model import (
    bouquet_tree,
    choose_maximal_tree,
    graph_from_edges,
    subdivide_for_index,
)


def random_graph(rng: random.Random, min_k: int = 3, max_k: int = 6, extra: int = 3):
    """A connected simple graph on k vertices with up to ``extra`` independent cycles."""
    k = rng.randint(min_k, max_k)
    m = min(rng.randint(k - 1, k - 1 + extra), k * (k - 1) // 2)
    edges = {(rng.randrange(v), v) for v in range(1, k)}
    while len(edges) < m:
        a, b = sorted(rng.sample(range(k), 2))
        edges.add((a, b))
    return graph_from_edges(sorted(edges), k)


def random_star_bouquet(rng: random.Random, linear: bool = True):
    """Branch vertices on a path (or a tree when not ``linear``) with loops and hairs."""
    m = rng.randint(1, 3)
    edges = []
    nv = m
    for i in range(1, m):
        edges.append((i - 1, i) if linear else (rng.randrange(i), i))
    for v in range(m):
        for _ in range(rng.randint(0, 2)):
            edges.append((v, v))
        for _ in range(rng.randint(0 if v else 1, 2)):
            edges.append((v, nv))
            nv += 1
    return graph_from_edges(edges, nv)


@lru_cache(maxsize=None)
def general_tree(seed: int, n: int):
    rng = random.Random(seed)
    g = random_graph(rng)
    return choose_maximal_tree(subdivide_for_index(g, n, "Strict"), "Valency2Ends")


@lru_cache(maxsize=None)
def bouquet(seed: int, n: int, linear: bool = True):
    rng = random.Random(seed)
    g = random_star_bouquet(rng, linear)
    return bouquet_tree(subdivide_for_index(g, n, "Strict"))

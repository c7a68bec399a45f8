"""Deterministic test-graph generators.

Everything takes an explicit random.Random so sweeps are reproducible.
Graphs come out free of isolated vertices; the *connected* variants carry a
spanning backbone (tree or shuffled cycle), so undirected outputs are
connected and directed outputs are strongly connected by construction.
"""

from __future__ import annotations

import random

from .graph import Graph


def path_graph(weights) -> Graph:
    """Undirected path v0-v1-...; ``weights[i]`` is the weight of edge i."""
    edges = [(i, i + 1, w) for i, w in enumerate(weights)]
    return Graph(len(weights) + 1, edges)


def star_graph(leaves: int) -> Graph:
    """Undirected star; vertex 0 is the center."""
    return Graph(leaves + 1, [(0, i, 1) for i in range(1, leaves + 1)])


def undirected_connected(n: int, rng: random.Random, extra: float = 0.3,
                         weights=(1,)) -> Graph:
    edges = [(v, rng.randrange(v), rng.choice(weights)) for v in range(1, n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.append((u, v, rng.choice(weights)))
    return Graph(n, edges, directed=False)


def directed_strongly_connected(n: int, rng: random.Random, extra: float = 0.25,
                                weights=(1,)) -> Graph:
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[i], perm[(i + 1) % n], rng.choice(weights)) for i in range(n)]
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < extra:
                edges.append((u, v, rng.choice(weights)))
    return Graph(n, edges, directed=True)


def layered_dag(rng: random.Random, layers: int = 3, width: int = 3,
                p: float = 0.5, weights=(1,)) -> Graph:
    """Directed acyclic graph with arcs between consecutive layers; every
    vertex gets at least one incident arc."""
    n = layers * width
    vid = lambda layer, slot: layer * width + slot
    edges = []
    for layer in range(layers - 1):
        for a in range(width):
            for b in range(width):
                if rng.random() < p:
                    edges.append((vid(layer, a), vid(layer + 1, b),
                                  rng.choice(weights)))
    touched = {u for u, v, _ in edges} | {v for _, v, _ in edges}
    for layer in range(layers):
        for a in range(width):
            u = vid(layer, a)
            if u in touched:
                continue
            if layer < layers - 1:
                edges.append((u, vid(layer + 1, rng.randrange(width)),
                              rng.choice(weights)))
            else:
                edges.append((vid(layer - 1, rng.randrange(width)), u,
                              rng.choice(weights)))
            touched.add(u)
    return Graph(n, edges, directed=True)


def random_graph(n: int, rng: random.Random, directed: bool = False,
                 p: float = 0.3, weights=(1,)) -> Graph:
    """Sparse random graph with a backbone so no vertex is isolated."""
    if directed:
        return directed_strongly_connected(n, rng, extra=p, weights=weights)
    return undirected_connected(n, rng, extra=p, weights=weights)


def mixed_regime_graphs(count: int, seed: int, n_range=(8, 16)):
    """Round-robin over the four directed/weighted regimes plus DAGs."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randrange(n_range[0], n_range[1] + 1)
        regime = i % 5
        if regime == 0:
            out.append(undirected_connected(n, rng, weights=(1,)))
        elif regime == 1:
            out.append(undirected_connected(n, rng, weights=(1, 2, 3)))
        elif regime == 2:
            out.append(directed_strongly_connected(n, rng, weights=(1,)))
        elif regime == 3:
            out.append(directed_strongly_connected(n, rng, weights=(1, 2, 3)))
        else:
            out.append(layered_dag(rng, layers=3, width=max(2, n // 3),
                                   weights=(1, 2, 3)))
    return out

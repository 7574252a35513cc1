"""Shared corpus builders for the test suite. Everything is seeded."""

import random

from outbranching import Digraph


def random_digraph(rng, n_lo=4, n_hi=7, density=2.0):
    """A random simple digraph with n in [n_lo, n_hi] and about density*n arcs."""
    n = rng.randint(n_lo, n_hi)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    m = min(len(pairs), max(1, int(density * n) + rng.randint(-2, 2)))
    arcs = rng.sample(pairs, m)
    return Digraph.of(n, arcs)


def random_corpus(count, seed, n_lo=4, n_hi=7, density=2.0):
    rng = random.Random(seed)
    return [random_digraph(rng, n_lo, n_hi, density) for _ in range(count)]


def all_orientations(n, edges):
    """Every digraph obtained by directing each undirected edge one way."""
    out = []
    for mask in range(1 << len(edges)):
        arcs = []
        for i, (u, v) in enumerate(edges):
            arcs.append((u, v) if mask >> i & 1 else (v, u))
        out.append(Digraph.of(n, arcs))
    return out


FOUR_VERTEX_GRAPHS = {
    "cycle": [(0, 1), (1, 2), (2, 3), (3, 0)],
    "diamond": [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
    "complete": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
}


def four_vertex_orientations():
    out = []
    for edges in FOUR_VERTEX_GRAPHS.values():
        out.extend(all_orientations(4, edges))
    return out


def grid_digraph(rows, cols, seed=0, both_ways_prob=1.0):
    """Grid with seeded edge orientation; both_ways_prob=1.0 is bidirected.

    Kept here independent of the library's generator module so generator
    tests have something to compare against.
    """
    rng = random.Random(seed)
    arcs = []

    def vid(r, c):
        return r * cols + c

    for r in range(rows):
        for c in range(cols):
            for r2, c2 in ((r, c + 1), (r + 1, c)):
                if r2 >= rows or c2 >= cols:
                    continue
                u, v = vid(r, c), vid(r2, c2)
                if rng.random() < both_ways_prob:
                    arcs.extend([(u, v), (v, u)])
                elif rng.random() < 0.5:
                    arcs.append((u, v))
                else:
                    arcs.append((v, u))
    return Digraph.of(rows * cols, arcs)


def grid_graph(rows, cols):
    """Undirected rows x cols grid, row-major vertex ids."""
    from outbranching import UndirectedGraph

    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return UndirectedGraph.of(rows * cols, edges)

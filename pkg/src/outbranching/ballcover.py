"""Long directed paths found through undirected ball covers.

A directed path with k arcs visits k+1 vertices, and consecutive path
vertices are adjacent in the underlying undirected graph.  Walking the
path and dropping a center every ceil(k/b) steps covers its whole vertex
set with at most b balls of radius ceil(k/b).  So the digraph has a
k-arc path exactly when, for some b-subset of vertices, the subdigraph
induced by the union of their balls has one; the solver enumerates every
b-subset and runs the path DP on each induced piece.

Choosing b trades enumeration against DP difficulty: small b means few
subsets but big pieces, large b many subsets of shallow pieces.  On
graph families whose treewidth shrinks with ball radius the pieces stay
thin; b is taken as an explicit parameter here, with no attempt to pick
it from the family's hidden constants.
"""

import math
from itertools import combinations

from .digraph import bfs_layers, underlying_graph
from .errors import BudgetError
from .treedp import dp_longest_path

DEFAULT_SUBSET_BUDGET = 200000


class BallCoverConfig:
    __slots__ = ("b", "radius")

    def __init__(self, b, k):
        assert b >= 1
        self.b = b
        self.radius = -(-k // b)
        assert k < b or self.radius >= 1


def ball(graph, center, radius):
    """Vertices within undirected distance ``radius`` of ``center``."""
    assert radius >= 0
    layers, _ = bfs_layers(graph, center)
    return frozenset().union(*layers[:radius + 1])


class PathSearchResult:
    __slots__ = ("satisfiable", "k", "b", "witness", "stats")

    def __init__(self, satisfiable, k, b, witness, stats):
        self.satisfiable = satisfiable
        self.k = k
        self.b = b
        self.witness = witness
        self.stats = stats


def solve_kpath_ballcover(digraph, k, b, budget=DEFAULT_SUBSET_BUDGET):
    """Decide whether the digraph has a directed path with >= k arcs.

    Tries every b-subset of vertices in ascending order, induces the
    union of their radius-ceil(k/b) balls, and runs the treewidth path
    DP there.  Exact for every b between 1 and n; the subset count is
    checked against the budget up front.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    n = digraph.n
    if not 1 <= b <= n:
        raise ValueError(f"b must be in 1..{n}, got {b}")
    config = BallCoverConfig(b, k)
    stats = {
        "radius": config.radius,
        "subsets": 0,
        "dp_runs": 0,
        "cache_hits": 0,
        "skipped_small": 0,
        "hit_subset": None,
    }
    total = math.comb(n, b)
    if budget is not None and total > budget:
        raise BudgetError("ball-cover subsets", total, budget)
    graph = underlying_graph(digraph)
    balls = {v: ball(graph, v, config.radius) for v in digraph.vertices}
    cache = {}
    for centers in combinations(sorted(digraph.vertices), b):
        stats["subsets"] += 1
        region = frozenset().union(*(balls[c] for c in centers))
        if len(region) < k + 1:
            stats["skipped_small"] += 1
            continue
        if region in cache:
            stats["cache_hits"] += 1
            arcs, path = cache[region]
        else:
            stats["dp_runs"] += 1
            arcs, path = dp_longest_path(digraph.induced(region))
            cache[region] = (arcs, path)
        if arcs >= k:
            stats["hit_subset"] = centers
            for u, v in zip(path, path[1:]):
                assert digraph.has_arc(u, v)
            return PathSearchResult(True, k, b, list(path), stats)
    return PathSearchResult(False, k, b, None, stats)

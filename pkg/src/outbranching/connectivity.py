"""Root-centered connectivity: reachability, cut vertices and their stranded
neighborhoods, and the vertex classes that drive the leaf-count reduction.

Conventions. All questions are relative to a root r. A vertex x != r is a
cut vertex when deleting it makes some vertex unreachable from r; r itself
is never called a cut vertex (deleting the root is not a meaningful cut of
a rooted instance). The stranded out-neighborhood of x collects the
out-neighbors of x that deleting x disconnects from r; it is never empty
for a cut vertex.
"""

from __future__ import annotations

from .digraph import Digraph


def reachable(digraph, root, removed=(), removed_arcs=()):
    """Vertices reachable from ``root`` after deleting the given vertices
    and arcs. The root itself counts as reachable unless it is removed."""
    removed = frozenset(removed)
    removed_arcs = frozenset(removed_arcs)
    if root in removed or root not in digraph.vertices:
        return frozenset()
    seen = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in digraph.out_neighbors(x):
            if y in seen or y in removed or (x, y) in removed_arcs:
                continue
            seen.add(y)
            stack.append(y)
    return frozenset(seen)


def _require_all_reachable(digraph, root):
    miss = digraph.vertices - reachable(digraph, root)
    if miss:
        raise ValueError(f"vertices unreachable from root {root}: {sorted(miss)}")


def is_rooted_2connected(digraph, root):
    """True when no single vertex other than the root separates the root
    from anything: for every z != r, deleting z leaves all other vertices
    reachable from r. Requires every vertex reachable to begin with."""
    _require_all_reachable(digraph, root)
    for z in sorted(digraph.vertices):
        if z == root:
            continue
        keep = digraph.vertices - {z}
        if reachable(digraph, root, removed=(z,)) != keep:
            return False
    return True


class CutProfile:
    """Cut structure of a rooted digraph.

    Fields:
      cut_vertices: every x != r whose deletion strands some vertex.
      stranded: {x: frozenset of out-neighbors of x unreachable without x}.
      multi_cut: cut vertices stranding >= 2 of their own out-neighbors.
      single_cut: cut vertices stranding exactly 1.
      forced_arcs: arcs from multi_cut vertices into their stranded
        out-neighbors; any spanning out-tree can be rewired to contain them.
      pendant_arcs: the single_cut analogue, one arc per vertex; after the
        stranding-arc contraction phase these form a matching.
    """

    __slots__ = ("cut_vertices", "stranded", "multi_cut", "single_cut",
                 "forced_arcs", "pendant_arcs")

    def __init__(self, cut_vertices, stranded, multi_cut, single_cut,
                 forced_arcs, pendant_arcs):
        self.cut_vertices = cut_vertices
        self.stranded = stranded
        self.multi_cut = multi_cut
        self.single_cut = single_cut
        self.forced_arcs = forced_arcs
        self.pendant_arcs = pendant_arcs


def cut_profile(digraph, root):
    """Classify cut vertices by how many of their out-neighbors they strand.

    O(n * (n + m)): one reachability sweep per candidate vertex.
    """
    _require_all_reachable(digraph, root)
    cut = set()
    stranded = {}
    for x in sorted(digraph.vertices):
        if x == root:
            continue
        reach_minus = reachable(digraph, root, removed=(x,))
        lost = digraph.vertices - {x} - reach_minus
        if not lost:
            continue
        cut.add(x)
        mine = digraph.out_neighbors(x) & lost
        assert mine, "a cut vertex strands at least one of its out-neighbors"
        stranded[x] = frozenset(mine)
    multi = frozenset(x for x in cut if len(stranded[x]) >= 2)
    single = frozenset(x for x in cut if len(stranded[x]) == 1)
    forced = frozenset((x, y) for x in multi for y in stranded[x])
    pendant = frozenset((x, y) for x in single for y in stranded[x])
    return CutProfile(frozenset(cut), stranded, multi, single, forced, pendant)


def nice_vertices(digraph):
    """Vertices with an in-neighbor that is not also an out-neighbor."""
    out = set()
    for v in digraph.vertices:
        if digraph.in_neighbors(v) - digraph.out_neighbors(v):
            out.add(v)
    return frozenset(out)


def high_indegree_vertices(digraph, threshold=3):
    return frozenset(v for v in digraph.vertices
                     if digraph.in_degree(v) >= threshold)


def arcs_disconnecting_two(digraph, root):
    """Arcs whose single removal makes >= 2 currently-reachable vertices
    unreachable from the root.

    An arc (x, y) strands anything at all only if it strands y itself,
    which happens exactly when no other in-neighbor of y stays reachable
    once y is deleted. That filter needs one reachability sweep per head
    vertex; only the few candidates that pass get the exact stranded count.
    """
    base = reachable(digraph, root)
    heads = {y for (_, y) in digraph.arcs if y != root and y in base}
    reach_without = {y: reachable(digraph, root, removed=(y,)) for y in heads}
    out = set()
    for x, y in digraph.arcs:
        if y == root or y not in base or x not in base:
            continue
        others = digraph.in_neighbors(y) - {x}
        if others & reach_without[y]:
            continue  # y survives via another in-arc
        stranded = base - reachable(digraph, root, removed_arcs=((x, y),))
        if len(stranded) >= 2:
            out.add((x, y))
    return frozenset(out)

"""Solver for spanning out-trees with many internal vertices.

The decision question: does the digraph have a spanning out-tree rooted
at r in which at least k vertices have a child?  The search never looks
at spanning trees directly.  A spanning out-tree with k internal
vertices can be pruned, leaf by leaf, down to a small witness: an
r-out-tree with exactly k internal vertices in which every leaf is an
only child.  Such a tree has at most max(2, 2k-1) vertices, and
conversely any r-out-tree with k internal vertices grows back into a
spanning out-tree without losing internal vertices as long as the whole
digraph is reachable from r.  So the solver hunts for a small witness
tree.

To keep the dynamic program cheap on layered inputs, the vertex set is
split by breadth-first depth into ceil(sqrt(k))+1 interleaved classes.
A witness tree is small, so it meets some class in at most
ceil(2*sqrt(k)) vertices; deleting the rest of that class leaves a
shallow digraph that still contains the witness.  The solver enumerates
every (class, kept-subset) choice and runs the size-capped internal-DP
on each residual digraph.

A kernelization hook runs before everything else.  The default is the
identity; a plugged-in kernel must only delete vertices and must output
at most 8k^2+6k of them, which is checked.
"""

import math
from itertools import combinations

from .digraph import bfs_layers, underlying_graph, validate_out_tree, OutTree
from .connectivity import reachable
from .errors import BudgetError, KernelContractError
from .treedp import dp_max_internal_outtree

DEFAULT_COLLECTION_BUDGET = 200000


def ceil_sqrt(n):
    """Smallest integer whose square is >= n."""
    assert n >= 0
    if n == 0:
        return 0
    return math.isqrt(n - 1) + 1


def witness_size_cap(k):
    """Largest vertex count a pruned witness tree with k internal needs.

    A tree with exactly k >= 2 internal vertices and every leaf an only
    child has at most k-1 leaves, so at most 2k-1 vertices.  For k = 1
    the witness is a root plus one child, which is 2 vertices, not 1.
    """
    assert k >= 1
    return max(2, 2 * k - 1)


class SingleInstance:
    """Marker: the digraph is shallow enough to solve in one piece."""

    __slots__ = ("root", "depth")

    def __init__(self, root, depth):
        self.root = root
        self.depth = depth


class LayerPartition:
    __slots__ = ("root", "layers", "parts", "spacing")

    def __init__(self, root, layers, parts, spacing):
        assert spacing >= 2
        self.root = root
        self.layers = layers
        self.parts = parts
        self.spacing = spacing
        seen = set()
        for part in parts:
            assert not (part & seen)
            seen |= part
        assert seen == frozenset().union(*layers)


class SubInstance:
    """One residual digraph from the layered collection."""

    __slots__ = ("digraph", "root", "k", "part_index", "kept")

    def __init__(self, digraph, root, k, part_index, kept):
        self.digraph = digraph
        self.root = root
        self.k = k
        self.part_index = part_index
        self.kept = frozenset(kept)
        assert root in digraph.vertices
        if part_index is not None:
            assert len(self.kept) <= ceil_sqrt(4 * k)
            assert self.kept <= digraph.vertices


def kernel_stage(digraph, k, kernel=None):
    """Run the optional kernelization plug-in and check its contract.

    The default is the identity.  A plug-in gets (digraph, k) and must
    return (smaller_digraph, smaller_k) where the output digraph is an
    induced subdigraph (vertex deletion only), the parameter does not
    grow, and the vertex count is at most 8k^2+6k.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if kernel is None:
        return digraph, k
    out, k2 = kernel(digraph, k)
    if not isinstance(k2, int) or k2 < 1 or k2 > k:
        raise KernelContractError(
            f"kernel returned parameter {k2!r}, expected 1..{k}")
    if not out.vertices <= digraph.vertices:
        extra = sorted(out.vertices - digraph.vertices)
        raise KernelContractError(f"kernel invented vertices {extra}")
    induced = digraph.induced(out.vertices)
    if out.arcs != induced.arcs:
        raise KernelContractError(
            "kernel output is not an induced subdigraph; "
            "only vertex deletion is allowed")
    bound = 8 * k * k + 6 * k
    if out.n > bound:
        raise KernelContractError(
            f"kernel output has {out.n} vertices, contract allows {bound}")
    return out, k2


def build_partitions(graph, root, k):
    """Split an undirected graph into interleaved depth classes.

    Requires every vertex reachable from root.  Returns SingleInstance
    when the BFS depth is at most ceil(sqrt(k)); otherwise a
    LayerPartition whose parts collect the layers of each residue class
    modulo ceil(sqrt(k))+1.
    """
    assert k >= 1
    layers, stranded = bfs_layers(graph, root)
    assert not stranded, "build_partitions needs a connected input"
    depth = len(layers) - 1
    limit = ceil_sqrt(k)
    if depth <= limit:
        return SingleInstance(root, depth)
    spacing = limit + 1
    parts = []
    for q in range(spacing):
        block = frozenset().union(*layers[q::spacing])
        parts.append(block)
    return LayerPartition(root, layers, parts, spacing)


def collection_size(plan, k):
    """Closed-form count of the sub-instances a plan will generate."""
    if isinstance(plan, SingleInstance):
        return 1
    zcap = ceil_sqrt(4 * k)
    total = 0
    for part in plan.parts:
        if plan.root in part:
            pool = len(part) - 1
            room = zcap - 1
        else:
            pool = len(part)
            room = zcap
        total += sum(math.comb(pool, j) for j in range(min(pool, room) + 1))
    return total


def generate_collection(digraph, k, root, budget=DEFAULT_COLLECTION_BUDGET):
    """Yield every sub-instance of the layered collection, lazily.

    The count is known in closed form before anything is built; when it
    exceeds the budget a BudgetError is raised instead of truncating.
    """
    assert reachable(digraph, root) == digraph.vertices
    plan = build_partitions(underlying_graph(digraph), root, k)
    if isinstance(plan, SingleInstance):
        yield SubInstance(digraph, root, k, None, frozenset())
        return
    total = collection_size(plan, k)
    if budget is not None and total > budget:
        raise BudgetError("layered collection", total, budget)
    zcap = ceil_sqrt(4 * k)
    for a, part in enumerate(plan.parts):
        pool = sorted(part - {root})
        base = frozenset({root}) if root in part else frozenset()
        room = zcap - len(base)
        for size in range(min(len(pool), room) + 1):
            for combo in combinations(pool, size):
                z = base | frozenset(combo)
                keep = (digraph.vertices - part) | z
                yield SubInstance(digraph.induced(keep), root, k, a, z)


def expand_minimal_tree(digraph, root, tree):
    """Grow an r-out-tree into a spanning out-tree of the digraph.

    Every vertex must be reachable from root.  Uncovered vertices are
    attached breadth-first as children of already covered ones, so every
    arc of the input tree survives and no internal vertex turns into a
    leaf.
    """
    if reachable(digraph, root) != digraph.vertices:
        missing = sorted(digraph.vertices - reachable(digraph, root))
        raise ValueError(f"vertices {missing} are unreachable from {root}")
    validate_out_tree(digraph, tree)
    assert tree.root == root
    parents = dict(tree.parents)
    covered = set(tree.vertex_set)
    before = len(tree.internal_vertices())
    queue = sorted(covered)
    while queue:
        nxt = []
        for u in queue:
            for w in sorted(digraph.out_neighbors(u)):
                if w not in covered:
                    covered.add(w)
                    parents[w] = u
                    nxt.append(w)
        queue = nxt
    assert covered == digraph.vertices
    grown = OutTree(root, parents)
    validate_out_tree(digraph, grown, spanning=True)
    assert tree.arcs() <= grown.arcs()
    assert len(grown.internal_vertices()) >= before
    return grown


class InternalSearchResult:
    __slots__ = ("satisfiable", "k", "root", "witness", "reports")

    def __init__(self, satisfiable, k, root, witness, reports):
        self.satisfiable = satisfiable
        self.k = k
        self.root = root
        self.witness = witness
        self.reports = reports


def _solve_one_root(digraph, k, root, budget, witness, cache):
    """Search the layered collection for one root.

    Returns (report, tree-or-None); the tree is a small witness inside
    the digraph, not yet expanded.
    """
    report = {
        "root": root,
        "outcome": "exhausted",
        "collection_size": 0,
        "evaluated": 0,
        "skipped_small": 0,
        "cache_hits": 0,
        "hit": None,
    }
    if reachable(digraph, root) != digraph.vertices:
        report["outcome"] = "disconnected"
        return report, None
    if k > digraph.n - 1:
        report["outcome"] = "infeasible_k"
        return report, None
    plan = build_partitions(underlying_graph(digraph), root, k)
    report["collection_size"] = collection_size(plan, k)
    cap = witness_size_cap(k)
    for sub in generate_collection(digraph, k, root, budget):
        if sub.digraph.n < k + 1:
            report["skipped_small"] += 1
            continue
        key = sub.digraph.vertices
        if key in cache:
            report["cache_hits"] += 1
            best = cache[key]
        else:
            report["evaluated"] += 1
            (internal, _size), tree = dp_max_internal_outtree(
                sub.digraph, root, size_cap=cap)
            best = (internal, tree)
            cache[key] = best
        if best[0] >= k:
            report["outcome"] = "witness_tree"
            report["hit"] = (sub.part_index, tuple(sorted(sub.kept)))
            return report, best[1]
    return report, None


def solve_iob(digraph, k, root=None, kernel=None,
              budget=DEFAULT_COLLECTION_BUDGET, witness=True):
    """Decide whether some spanning out-tree has at least k internal
    vertices, rooted at the given vertex or at any vertex.

    Returns an InternalSearchResult; the witness, when requested and
    found, is a spanning out-tree of the post-kernel digraph with at
    least k internal vertices.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    core, k2 = kernel_stage(digraph, k, kernel)
    if root is not None and root not in core.vertices:
        if root in digraph.vertices:
            raise KernelContractError(
                f"kernel deleted the requested root {root}")
        raise ValueError(f"root {root} not in digraph")
    roots = [root] if root is not None else sorted(core.vertices)
    reports = []
    for r in roots:
        cache = {}
        report, tree = _solve_one_root(core, k2, r, budget, witness, cache)
        reports.append(report)
        if tree is None:
            continue
        grown = None
        if witness:
            grown = expand_minimal_tree(core, r, tree)
            assert len(grown.internal_vertices()) >= k2
        return InternalSearchResult(True, k, r, grown, reports)
    return InternalSearchResult(False, k, None, None, reports)

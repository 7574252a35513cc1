"""Dynamic programs over nice tree decompositions of the underlying graph.

Three optimizations share the bag-state machinery: maximum-leaf spanning
branchings, maximum-internal out-trees under a size cap, and longest
directed paths.  Each underlying undirected edge of the host digraph is
handled at exactly one decomposition node (the first node in post order
whose bag contains both endpoints), so an arc can never be committed
twice and an in-degree violation shows up as a dead state instead of a
silent double count.

A state records how a partial solution meets the current bag: a partition
of the in-bag solution vertices into connected fragments plus per-vertex
connection flags.  A fragment that loses its last bag vertex can never
gain another connection, so it must either be the finished solution or
the state dies on the spot.  That single rule is what makes the final
tables sound.
"""

from __future__ import annotations

from .digraph import OutTree, underlying_graph, validate_out_tree
from .treewidth import FORGET, INTRODUCE, JOIN, LEAF, greedy_decomposition, make_nice

ABSENT = -1
CLOSED = -2


class _Step:
    """One executed table of the dynamic program, with backpointers."""

    __slots__ = ("op", "prev", "table", "back")

    def __init__(self, op, prev, table, back):
        self.op = op
        self.prev = prev
        self.table = table
        self.back = back


def _push(table, back, state, score, prov):
    old = table.get(state)
    if old is None or score > old:
        table[state] = score
        back[state] = prov


def _uf_find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _canon_tree(blocks, pb, cb, rstat):
    """Renumber fragment labels by first occurrence; remap the root mark."""

    mapping = {}
    nb = []
    for b in blocks:
        if b < 0:
            nb.append(-1)
        else:
            if b not in mapping:
                mapping[b] = len(mapping)
            nb.append(mapping[b])
    if rstat >= 0:
        rstat = mapping[rstat]
    return tuple(nb), tuple(pb), tuple(cb), rstat


class _TreeEngine:
    """Out-tree and spanning-branching tables.

    State: (blocks, parent_bits, child_bits, root_status, size).  blocks
    holds -1 for bag vertices outside the solution and a canonical
    fragment label otherwise.  root_status is ABSENT before the root
    appears, CLOSED once the root fragment is complete, and the root
    fragment's label in between.  size counts solution vertices seen so
    far and is only constrained when size_cap is set.
    """

    def __init__(self, digraph, root, spanning, score_leaves, size_cap):
        self.digraph = digraph
        self.root = root
        self.spanning = spanning
        self.score_leaves = score_leaves
        self.size_cap = size_cap

    def leaf(self):
        state = ((), (), (), ABSENT, 0)
        return {state: 0}, {state: None}

    def introduce(self, tin, oldbag, newbag, v):
        p = newbag.index(v)
        table, back = {}, {}
        for s in sorted(tin):
            blocks, pb, cb, rstat, size = s
            score = tin[s]
            if not self.spanning and v != self.root:
                st = (
                    blocks[:p] + (-1,) + blocks[p:],
                    pb[:p] + (0,) + pb[p:],
                    cb[:p] + (0,) + cb[p:],
                    rstat,
                    size,
                )
                _push(table, back, st, score, s)
            if rstat == CLOSED:
                continue
            if self.size_cap is not None and size + 1 > self.size_cap:
                continue
            lab = max(blocks, default=-1) + 1
            rs2 = rstat
            if v == self.root:
                assert rstat == ABSENT
                rs2 = lab
            st4 = _canon_tree(
                blocks[:p] + (lab,) + blocks[p:],
                pb[:p] + (0,) + pb[p:],
                cb[:p] + (0,) + cb[p:],
                rs2,
            )
            _push(table, back, st4 + (size + 1,), score, s)
        return table, back

    def forget(self, tin, oldbag, newbag, v):
        p = oldbag.index(v)
        table, back = {}, {}
        for s in sorted(tin):
            blocks, pb, cb, rstat, size = s
            score = tin[s]
            b = blocks[p]
            rb = blocks[:p] + blocks[p + 1:]
            rp = pb[:p] + pb[p + 1:]
            rc = cb[:p] + cb[p + 1:]
            if b == -1:
                st = _canon_tree(rb, rp, rc, rstat)
                _push(table, back, st + (size,), score, s)
                continue
            if v != self.root and not pb[p]:
                continue
            if self.score_leaves:
                delta = 0 if cb[p] else 1
            else:
                delta = 1 if cb[p] else 0
            if b in rb:
                st = _canon_tree(rb, rp, rc, rstat)
                _push(table, back, st + (size,), score + delta, s)
            else:
                # the fragment lost its last bag vertex
                if rstat != b:
                    continue
                if any(x >= 0 for x in rb):
                    continue
                st = _canon_tree(rb, rp, rc, CLOSED)
                _push(table, back, st + (size,), score + delta, s)
        return table, back

    def edge(self, tin, bag, e):
        u, w = e
        pu, pw = bag.index(u), bag.index(w)
        cands = []
        if self.digraph.has_arc(u, w):
            cands.append((u, w, pu, pw))
        if self.digraph.has_arc(w, u):
            cands.append((w, u, pw, pu))
        table, back = {}, {}
        for s in sorted(tin):
            blocks, pb, cb, rstat, size = s
            score = tin[s]
            _push(table, back, s, score, (s, None))
            for x, y, px, py in cands:
                if blocks[px] < 0 or blocks[py] < 0:
                    continue
                if y == self.root or pb[py]:
                    continue
                bx, by = blocks[px], blocks[py]
                if bx == by:
                    continue
                nb = tuple(bx if t == by else t for t in blocks)
                np2 = list(pb)
                np2[py] = 1
                nc2 = list(cb)
                nc2[px] = 1
                rs2 = bx if rstat == by else rstat
                st = _canon_tree(nb, np2, nc2, rs2)
                _push(table, back, st + (size,), score, (s, (x, y)))
        return table, back

    def join(self, tl, tr, bag):
        table, back = {}, {}
        groups = {}
        for rs in sorted(tr):
            mask = tuple(1 if b >= 0 else 0 for b in rs[0])
            groups.setdefault(mask, []).append(rs)
        for ls in sorted(tl):
            lb, lp, lc, lr, lsize = ls
            mask = tuple(1 if b >= 0 else 0 for b in lb)
            for rs in groups.get(mask, ()):
                rb, rp, rc, rr, rsize = rs
                if any(a and b for a, b in zip(lp, rp)):
                    continue
                score = tl[ls] + tr[rs]
                n_in = sum(mask)
                size = lsize + rsize - n_in
                if self.size_cap is not None and size > self.size_cap:
                    continue
                if lr == CLOSED or rr == CLOSED:
                    if lr == CLOSED and rr == CLOSED:
                        continue
                    other = rr if lr == CLOSED else lr
                    if n_in or other != ABSENT:
                        continue
                    _push(table, back, (lb, lp, lc, CLOSED, size), score, (ls, rs))
                    continue
                nlab = max(lb, default=-1) + 1
                parent = list(range(nlab))
                ok = True
                for label in range(max(rb, default=-1) + 1):
                    members = [i for i, b in enumerate(rb) if b == label]
                    a0 = _uf_find(parent, lb[members[0]])
                    for pos in members[1:]:
                        a = _uf_find(parent, lb[pos])
                        if a == a0:
                            ok = False
                            break
                        parent[a] = a0
                    if not ok:
                        break
                if not ok:
                    continue
                blocks = tuple(
                    _uf_find(parent, b) if b >= 0 else -1 for b in lb
                )
                roots = set()
                if lr >= 0:
                    roots.add(_uf_find(parent, lr))
                if rr >= 0:
                    pos = next(i for i, b in enumerate(rb) if b == rr)
                    roots.add(_uf_find(parent, lb[pos]))
                assert len(roots) <= 1, "two root fragments met outside the bag"
                rstat = roots.pop() if roots else ABSENT
                pb = tuple(a | b for a, b in zip(lp, rp))
                cb = tuple(a | b for a, b in zip(lc, rc))
                st = _canon_tree(blocks, pb, cb, rstat)
                _push(table, back, st + (size,), score, (ls, rs))
        return table, back


def _canon_path(blocks, ib, ob, seals, closed):
    """Canonical path state; seals are (sealed_in*2 + sealed_out) codes."""

    mapping = {}
    nb = []
    for b in blocks:
        if b < 0:
            nb.append(-1)
        else:
            if b not in mapping:
                mapping[b] = len(mapping)
            nb.append(mapping[b])
    ns = [0] * len(mapping)
    for raw, idx in mapping.items():
        ns[idx] = seals[raw]
    return tuple(nb), tuple(ib), tuple(ob), tuple(ns), closed


class _PathEngine:
    """Directed path tables.

    State: (blocks, in_used, out_used, seals, closed).  A fragment is a
    directed path; exactly one vertex of it has a free in end and one a
    free out end, each either still in the bag or recorded in the
    fragment's seal bits after being forgotten.  closed flips once the
    finished path has been forgotten entirely; a second completed
    fragment kills the state.
    """

    def __init__(self, digraph):
        self.digraph = digraph

    def leaf(self):
        state = ((), (), (), (), 0)
        return {state: 0}, {state: None}

    def introduce(self, tin, oldbag, newbag, v):
        p = newbag.index(v)
        table, back = {}, {}
        for s in sorted(tin):
            blocks, ib, ob, seals, closed = s
            score = tin[s]
            st = (
                blocks[:p] + (-1,) + blocks[p:],
                ib[:p] + (0,) + ib[p:],
                ob[:p] + (0,) + ob[p:],
                seals,
                closed,
            )
            _push(table, back, st, score, s)
            if closed:
                continue
            lab = max(blocks, default=-1) + 1
            st = _canon_path(
                blocks[:p] + (lab,) + blocks[p:],
                ib[:p] + (0,) + ib[p:],
                ob[:p] + (0,) + ob[p:],
                seals + (0,),
                0,
            )
            _push(table, back, st, score, s)
        return table, back

    def forget(self, tin, oldbag, newbag, v):
        p = oldbag.index(v)
        table, back = {}, {}
        for s in sorted(tin):
            blocks, ib, ob, seals, closed = s
            score = tin[s]
            b = blocks[p]
            rb = blocks[:p] + blocks[p + 1:]
            ri = ib[:p] + ib[p + 1:]
            ro = ob[:p] + ob[p + 1:]
            if b == -1:
                st = _canon_path(rb, ri, ro, seals, closed)
                _push(table, back, st, score, s)
                continue
            si = seals[b] >> 1
            so = seals[b] & 1
            if ib[p] == 0:
                assert si == 0, "second free in end in one fragment"
                si = 1
            if ob[p] == 0:
                assert so == 0, "second free out end in one fragment"
                so = 1
            if b in rb:
                ns = seals[:b] + (si * 2 + so,) + seals[b + 1:]
                st = _canon_path(rb, ri, ro, ns, closed)
                _push(table, back, st, score, s)
            else:
                if closed:
                    continue
                if any(x >= 0 for x in rb):
                    continue
                assert si == 1 and so == 1
                st = _canon_path(rb, ri, ro, seals[:b] + seals[b + 1:], 1)
                _push(table, back, st, score, s)
        return table, back

    def edge(self, tin, bag, e):
        u, w = e
        pu, pw = bag.index(u), bag.index(w)
        cands = []
        if self.digraph.has_arc(u, w):
            cands.append((pu, pw, (u, w)))
        if self.digraph.has_arc(w, u):
            cands.append((pw, pu, (w, u)))
        table, back = {}, {}
        for s in sorted(tin):
            blocks, ib, ob, seals, closed = s
            score = tin[s]
            _push(table, back, s, score, (s, None))
            for px, py, arc in cands:
                bx, by = blocks[px], blocks[py]
                if bx < 0 or by < 0 or bx == by:
                    continue
                if ob[px] or ib[py]:
                    continue
                assert (seals[bx] & 1) == 0 and (seals[by] >> 1) == 0
                nb = tuple(bx if t == by else t for t in blocks)
                ni = list(ib)
                ni[py] = 1
                no = list(ob)
                no[px] = 1
                merged = (seals[bx] & 2) | (seals[by] & 1)
                ns = list(seals)
                ns[bx] = merged
                del ns[by]
                # labels above by shift down by one
                nb = tuple(t - 1 if t > by else t for t in nb)
                st = _canon_path(nb, ni, no, tuple(ns), closed)
                _push(table, back, st, score + 1, (s, arc))
        return table, back

    def join(self, tl, tr, bag):
        table, back = {}, {}
        groups = {}
        for rs in sorted(tr):
            mask = tuple(1 if b >= 0 else 0 for b in rs[0])
            groups.setdefault(mask, []).append(rs)
        for ls in sorted(tl):
            lb, li, lo, lseal, lclosed = ls
            mask = tuple(1 if b >= 0 else 0 for b in lb)
            for rs in groups.get(mask, ()):
                rb, ri, ro, rseal, rclosed = rs
                if lclosed and rclosed:
                    continue
                if any(a and b for a, b in zip(li, ri)):
                    continue
                if any(a and b for a, b in zip(lo, ro)):
                    continue
                score = tl[ls] + tr[rs]
                closed = lclosed | rclosed
                if closed and sum(mask):
                    # a finished path admits no further fragments
                    continue
                if not sum(mask):
                    # no in-bag solution vertices, so neither side carries
                    # fragments and the state passes through
                    assert lseal == () and rseal == ()
                    _push(table, back, (lb, li, lo, (), closed), score, (ls, rs))
                    continue
                nlab = max(lb, default=-1) + 1
                parent = list(range(nlab))
                ok = True
                for label in range(max(rb, default=-1) + 1):
                    members = [i for i, b in enumerate(rb) if b == label]
                    a0 = _uf_find(parent, lb[members[0]])
                    for pos in members[1:]:
                        a = _uf_find(parent, lb[pos])
                        if a == a0:
                            ok = False
                            break
                        parent[a] = a0
                    if not ok:
                        break
                if not ok:
                    continue
                ib = tuple(a | b for a, b in zip(li, ri))
                ob = tuple(a | b for a, b in zip(lo, ro))
                si = {}
                so = {}
                for label in range(nlab):
                    root_lab = _uf_find(parent, label)
                    si[root_lab] = si.get(root_lab, 0) + (lseal[label] >> 1)
                    so[root_lab] = so.get(root_lab, 0) + (lseal[label] & 1)
                for label in range(max(rb, default=-1) + 1):
                    pos = next(i for i, b in enumerate(rb) if b == label)
                    root_lab = _uf_find(parent, lb[pos])
                    si[root_lab] += rseal[label] >> 1
                    so[root_lab] += rseal[label] & 1
                if any(v > 1 for v in si.values()) or any(v > 1 for v in so.values()):
                    continue
                blocks = tuple(_uf_find(parent, b) if b >= 0 else -1 for b in lb)
                # only union-find roots survive as labels, so key by those
                seals = {lab: si[lab] * 2 + so[lab] for lab in si}
                st = _canon_path(blocks, ib, ob, seals, 0)
                _push(table, back, st, score, (ls, rs))
        return table, back


def _execute(digraph, nice, engine):
    """Run an engine over the nice decomposition, splicing in edge steps."""

    ug = underlying_graph(digraph)
    edges = sorted(ug.edges)
    assigned = set()
    covered = set()
    results = {}
    stack = [(nice.root, False)]
    while stack:
        node, expanded = stack.pop()
        if not expanded:
            stack.append((node, True))
            for child in node.children:
                stack.append((child, False))
            continue
        covered.update(node.bag)
        bag = tuple(sorted(node.bag))
        if node.kind == LEAF:
            table, back = engine.leaf()
            step = _Step(("leaf",), (), table, back)
        elif node.kind == INTRODUCE:
            child = results.pop(id(node.children[0]))
            oldbag = tuple(sorted(node.children[0].bag))
            table, back = engine.introduce(child.table, oldbag, bag, node.vertex)
            step = _Step(("introduce", node.vertex), (child,), table, back)
        elif node.kind == FORGET:
            child = results.pop(id(node.children[0]))
            oldbag = tuple(sorted(node.children[0].bag))
            table, back = engine.forget(child.table, oldbag, bag, node.vertex)
            step = _Step(("forget", node.vertex), (child,), table, back)
        else:
            assert node.kind == JOIN
            left = results.pop(id(node.children[0]))
            right = results.pop(id(node.children[1]))
            table, back = engine.join(left.table, right.table, bag)
            step = _Step(("join",), (left, right), table, back)
        for e in edges:
            if e not in assigned and e[0] in node.bag and e[1] in node.bag:
                assigned.add(e)
                table, back = engine.edge(step.table, bag, e)
                step = _Step(("edge", e), (step,), table, back)
        results[id(node)] = step
    assert covered >= digraph.vertices, "decomposition does not cover the digraph"
    assert len(assigned) == len(edges), "an underlying edge was never processed"
    return results[id(nice.root)]


def _collect_arcs(final_step, final_state):
    arcs = []
    stack = [(final_step, final_state)]
    while stack:
        step, state = stack.pop()
        prov = step.back[state]
        kind = step.op[0]
        if kind == "leaf":
            continue
        if kind == "join":
            sl, sr = prov
            stack.append((step.prev[0], sl))
            stack.append((step.prev[1], sr))
        elif kind == "edge":
            prev_state, arc = prov
            if arc is not None:
                arcs.append(arc)
            stack.append((step.prev[0], prev_state))
        else:
            stack.append((step.prev[0], prov))
    return arcs


def _nice_for(digraph, nice):
    if nice is not None:
        return nice
    return make_nice(greedy_decomposition(underlying_graph(digraph)))


def dp_max_leaves(digraph, root, nice=None):
    """Maximum number of leaves over spanning out-branchings rooted at root.

    Returns (count, tree) or None when no spanning branching exists.
    """

    assert root in digraph.vertices
    nice = _nice_for(digraph, nice)
    engine = _TreeEngine(digraph, root, spanning=True, score_leaves=True, size_cap=None)
    top = _execute(digraph, nice, engine)
    best = None
    for state in sorted(top.table):
        if state[3] != CLOSED:
            continue
        if best is None or top.table[state] > top.table[best]:
            best = state
    if best is None:
        return None
    score = top.table[best]
    arcs = _collect_arcs(top, best)
    parents = {h: t for t, h in arcs}
    assert len(parents) == len(arcs), "a vertex got two parents"
    tree = OutTree(root, parents)
    validate_out_tree(digraph, tree, spanning=True)
    assert len(tree.leaves()) == score
    return score, tree


def dp_max_internal_outtree(digraph, root, nice=None, size_cap=None):
    """Most internal vertices over out-trees rooted at root, size capped.

    Returns ((internal, size), tree).  The single-vertex tree {root} is
    always available, so there is always an answer.
    """

    assert root in digraph.vertices
    assert size_cap is None or size_cap >= 1
    nice = _nice_for(digraph, nice)
    engine = _TreeEngine(digraph, root, spanning=False, score_leaves=False,
                         size_cap=size_cap)
    top = _execute(digraph, nice, engine)
    best = None
    for state in sorted(top.table):
        if state[3] != CLOSED:
            continue
        key = (top.table[state], -state[4])
        if best is None or key > (top.table[best], -best[4]):
            best = state
    assert best is not None, "the one-vertex tree should always survive"
    score = top.table[best]
    size = best[4]
    arcs = _collect_arcs(top, best)
    parents = {h: t for t, h in arcs}
    assert len(parents) == len(arcs)
    tree = OutTree(root, parents)
    validate_out_tree(digraph, tree)
    assert len(tree.internal_vertices()) == score
    assert tree.size == size
    assert size_cap is None or size <= size_cap
    return (score, size), tree


def dp_longest_path(digraph, nice=None):
    """Longest directed path, counted in arcs.  Returns (count, vertices)."""

    if not digraph.vertices:
        return 0, []
    nice = _nice_for(digraph, nice)
    engine = _PathEngine(digraph)
    top = _execute(digraph, nice, engine)
    best = None
    for state in sorted(top.table):
        if state[4] != 1:
            continue
        if best is None or top.table[state] > top.table[best]:
            best = state
    if best is None or top.table[best] <= 0:
        return 0, [min(digraph.vertices)]
    score = top.table[best]
    arcs = _collect_arcs(top, best)
    assert len(arcs) == score
    heads = {y for _, y in arcs}
    nxt = {}
    for x, y in arcs:
        assert x not in nxt, "a vertex got two outgoing path arcs"
        nxt[x] = y
    starts = [x for x in nxt if x not in heads]
    assert len(starts) == 1, "path witness is not a single chain"
    path = [starts[0]]
    while path[-1] in nxt:
        path.append(nxt[path[-1]])
    assert len(path) == score + 1
    assert len(set(path)) == len(path)
    for a, b in zip(path, path[1:]):
        assert digraph.has_arc(a, b)
    return score, path

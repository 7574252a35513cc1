import pytest

from outbranching import (
    BudgetError,
    Digraph,
    KernelContractError,
    brute_max_internal,
    enum_out_trees,
    reachable,
    underlying_graph,
    validate_out_tree,
)
from outbranching.internal_pipeline import (
    LayerPartition,
    SingleInstance,
    build_partitions,
    ceil_sqrt,
    collection_size,
    expand_minimal_tree,
    generate_collection,
    kernel_stage,
    solve_iob,
    witness_size_cap,
)
from helpers import random_corpus


def bidirected_chain(n):
    arcs = []
    for i in range(n - 1):
        arcs.extend([(i, i + 1), (i + 1, i)])
    return Digraph.of(n, arcs)


def test_ceil_sqrt_values():
    assert [ceil_sqrt(v) for v in (0, 1, 2, 4, 5, 9, 10, 16)] == \
        [0, 1, 2, 2, 3, 3, 4, 4]


def test_witness_size_cap_values():
    assert witness_size_cap(1) == 2
    assert witness_size_cap(2) == 3
    assert witness_size_cap(5) == 9


def test_solve_path_and_star():
    path = Digraph.of(3, [(0, 1), (1, 2)])
    res = solve_iob(path, 2, root=0)
    assert res.satisfiable
    assert len(res.witness.internal_vertices()) >= 2
    star = Digraph.of(4, [(0, 1), (0, 2), (0, 3)])
    assert not solve_iob(star, 2, root=0).satisfiable
    assert solve_iob(star, 1, root=0).satisfiable


def test_partition_layout_spacing_three():
    chain = bidirected_chain(8)
    plan = build_partitions(underlying_graph(chain), 0, 4)
    assert isinstance(plan, LayerPartition)
    assert plan.spacing == 3
    assert [sorted(p) for p in plan.parts] == [[0, 3, 6], [1, 4, 7], [2, 5]]


def test_shallow_graph_is_single_instance():
    chain = bidirected_chain(3)
    plan = build_partitions(underlying_graph(chain), 0, 4)
    assert isinstance(plan, SingleInstance)
    assert plan.depth == 2
    subs = list(generate_collection(chain, 4, 0))
    assert len(subs) == 1
    assert subs[0].digraph.vertices == chain.vertices
    assert subs[0].part_index is None


def test_parts_partition_vertex_set():
    for d in random_corpus(25, seed=311, n_lo=5, n_hi=9, density=1.4):
        for r in sorted(d.vertices):
            if reachable(d, r) != d.vertices:
                continue
            plan = build_partitions(underlying_graph(d), r, 2)
            if isinstance(plan, SingleInstance):
                continue
            assert len(plan.parts) == ceil_sqrt(2) + 1
            union = frozenset().union(*plan.parts)
            assert union == d.vertices


def test_collection_count_matches_closed_form():
    checked = 0
    for d in random_corpus(30, seed=313, n_lo=5, n_hi=9, density=1.3):
        for r in sorted(d.vertices):
            if reachable(d, r) != d.vertices:
                continue
            for k in (2, 3, 5):
                plan = build_partitions(underlying_graph(d), r, k)
                want = collection_size(plan, k)
                got = sum(1 for _ in generate_collection(d, k, r))
                assert got == want
                checked += 1
    assert checked >= 20


def test_subset_bound_and_root_membership():
    chain = bidirected_chain(9)
    zcap = ceil_sqrt(4 * 2)
    for sub in generate_collection(chain, 2, 0):
        assert len(sub.kept) <= zcap
        assert 0 in sub.digraph.vertices
        part = build_partitions(underlying_graph(chain), 0, 2).parts[
            sub.part_index]
        assert sub.kept <= part
        assert sub.digraph.vertices == (chain.vertices - part) | sub.kept


def test_budget_error_before_any_yield():
    chain = bidirected_chain(20)
    gen = generate_collection(chain, 2, 0, budget=5)
    with pytest.raises(BudgetError):
        next(gen)
    with pytest.raises(BudgetError):
        solve_iob(chain, 2, root=0, budget=5)


def test_kernel_passthrough_and_contract_checks():
    d = bidirected_chain(4)
    assert kernel_stage(d, 3) == (d, 3)
    assert kernel_stage(d, 3, kernel=lambda g, k: (g, k)) == (d, 3)

    def inventing(g, k):
        return Digraph.of(g.n + 1, []), k

    with pytest.raises(KernelContractError):
        kernel_stage(d, 3, kernel=inventing)

    def arc_dropping(g, k):
        return g.without_arcs({(0, 1)}), k

    with pytest.raises(KernelContractError):
        kernel_stage(d, 3, kernel=arc_dropping)

    def oversized(g, k):
        return g, 1  # 4 vertices > 8+6 is false, so shrink the bound

    big = bidirected_chain(15)
    with pytest.raises(KernelContractError):
        kernel_stage(big, 1, kernel=lambda g, k: (g, k))

    with pytest.raises(KernelContractError):
        kernel_stage(d, 3, kernel=lambda g, k: (g, k + 1))

    def shrinking(g, k):
        keep = sorted(g.vertices)[:2]
        return g.induced(keep), k

    out, k2 = kernel_stage(d, 3, kernel=shrinking)
    assert out.vertices == frozenset({0, 1}) and k2 == 3


def test_kernel_deleting_requested_root():
    d = bidirected_chain(4)

    def dropping(g, k):
        return g.induced(g.vertices - {3}), k

    with pytest.raises(KernelContractError):
        solve_iob(d, 1, root=3, kernel=dropping)
    assert solve_iob(d, 1, root=0, kernel=dropping).satisfiable


def test_expand_keeps_arcs_and_internal_count():
    path = Digraph.of(3, [(0, 1), (1, 2)])
    from outbranching import OutTree
    stub = OutTree(0, {1: 0})
    grown = expand_minimal_tree(path, 0, stub)
    assert grown.parents == {1: 0, 2: 1}
    assert len(grown.internal_vertices()) == 2
    full = expand_minimal_tree(path, 0, grown)
    assert full.parents == grown.parents


def test_expand_rejects_unreachable():
    d = Digraph.of(3, [(0, 1)])
    from outbranching import OutTree
    with pytest.raises(ValueError):
        expand_minimal_tree(d, 0, OutTree(0, {1: 0}))


def test_expand_on_corpus():
    checked = 0
    for d in random_corpus(40, seed=331, n_lo=3, n_hi=7, density=2.0):
        for r in sorted(d.vertices):
            if reachable(d, r) != d.vertices:
                continue
            for tree in enum_out_trees(d, r, 3):
                grown = expand_minimal_tree(d, r, tree)
                validate_out_tree(d, grown, spanning=True)
                assert tree.arcs() <= grown.arcs()
                assert (len(grown.internal_vertices())
                        >= len(tree.internal_vertices()))
                checked += 1
                break
    assert checked >= 30


def test_solve_matches_oracle():
    for d in random_corpus(50, seed=337, n_lo=3, n_hi=6, density=1.9):
        for r in sorted(d.vertices):
            want = brute_max_internal(d, r)
            for k in (1, 2, 3):
                res = solve_iob(d, k, root=r)
                expect = want is not None and want >= k
                assert res.satisfiable == expect, (d.arcs, r, k)
                if res.satisfiable and res.witness is not None:
                    validate_out_tree(d, res.witness, spanning=True)
                    assert len(res.witness.internal_vertices()) >= k


def test_unreachable_root_reports_disconnected():
    d = Digraph.of(3, [(1, 0), (1, 2)])
    res = solve_iob(d, 1, root=0)
    assert not res.satisfiable
    assert res.reports[0]["outcome"] == "disconnected"
    scan = solve_iob(d, 1)
    assert scan.satisfiable and scan.root == 1
    assert scan.reports[0]["outcome"] == "disconnected"


def test_infeasible_k_guard():
    d = bidirected_chain(4)
    res = solve_iob(d, 4, root=0)
    assert not res.satisfiable
    assert res.reports[0]["outcome"] == "infeasible_k"
    single = Digraph.of(1, [])
    assert not solve_iob(single, 1, root=0).satisfiable


def test_hit_reporting_is_deterministic():
    d = bidirected_chain(9)
    first = solve_iob(d, 3, root=0)
    second = solve_iob(d, 3, root=0)
    assert first.satisfiable and second.satisfiable
    assert first.reports[0]["hit"] == second.reports[0]["hit"]


def test_witness_skippable():
    d = bidirected_chain(5)
    res = solve_iob(d, 3, root=0, witness=False)
    assert res.satisfiable and res.witness is None


def test_covering_keeps_some_witness_tree():
    """A small witness tree survives in at least one sub-instance."""
    covered_checks = 0
    for d in random_corpus(40, seed=347, n_lo=6, n_hi=9, density=1.3):
        for r in sorted(d.vertices):
            if reachable(d, r) != d.vertices:
                continue
            k = 2
            plan = build_partitions(underlying_graph(d), r, k)
            if isinstance(plan, SingleInstance):
                continue
            cap = witness_size_cap(k)
            witnesses = [t for t in enum_out_trees(d, r, cap)
                         if len(t.internal_vertices()) >= k]
            if not witnesses:
                continue
            tree = witnesses[0]
            hits = [s for s in generate_collection(d, k, r)
                    if tree.vertex_set <= s.digraph.vertices]
            assert hits, (d.arcs, r, sorted(tree.vertex_set))
            covered_checks += 1
    assert covered_checks >= 10

"""Structural reports and the benchmark harness.

analyze() runs the leaf-reduction machinery on one rooted instance and
reports the counts the theory bounds: the high-in-degree and nice-vertex
tallies, the cut-vertex split, the deletion set size, and treewidth
estimates of the underlying graph before and after deleting that set.
The headline number is tw / sqrt(|S|), which a sound reduction keeps
bounded on sparse planar-like families.

bench() runs the three solvers over generated instances and collects
rows suitable for CSV; budget blowups become per-row error entries
rather than aborting the run.
"""

import csv
import io
import math
import time

from .errors import BudgetError, KernelContractError, RootDisconnected
from .digraph import underlying_graph
from .leaf_pipeline import GuaranteedYes, Reduced, reduce_lob, solve_lob
from .internal_pipeline import solve_iob
from .ballcover import solve_kpath_ballcover
from .generators import GeneratorSpec, generate
from .treewidth import treewidth_upper_bound

ANALYZE_FIELDS = (
    "root", "k", "outcome", "contractions", "alpha", "beta",
    "multi_cut", "single_cut", "k_effective", "s_size",
    "tw_input", "tw_reduced", "tw_residual", "ratio",
)


def analyze(digraph, root, k):
    """Structural report for one rooted instance; never raises."""
    report = {name: None for name in ANALYZE_FIELDS}
    report["root"] = root
    report["k"] = k
    report["tw_input"] = treewidth_upper_bound(underlying_graph(digraph))
    try:
        outcome = reduce_lob(digraph, root, k)
    except RootDisconnected:
        report["outcome"] = "disconnected"
        return report
    sr = outcome.report
    report["contractions"] = sr.contractions
    report["multi_cut"] = sr.multi_cut_count
    report["single_cut"] = sr.single_cut_count
    report["k_effective"] = sr.k_effective
    report["alpha"] = sr.alpha
    report["beta"] = sr.beta
    if isinstance(outcome, GuaranteedYes):
        report["outcome"] = f"guaranteed_yes:{outcome.reason}"
        return report
    assert isinstance(outcome, Reduced)
    report["outcome"] = "reduced"
    s = outcome.s_vertices
    report["s_size"] = len(s)
    reduced_ug = underlying_graph(outcome.digraph)
    report["tw_reduced"] = treewidth_upper_bound(reduced_ug)
    residue = underlying_graph(outcome.digraph.without_vertices(s))
    report["tw_residual"] = treewidth_upper_bound(residue)
    if s:
        report["ratio"] = report["tw_reduced"] / math.sqrt(len(s))
    return report


BENCH_FIELDS = (
    "instance", "family", "n", "m", "problem", "k", "root", "b",
    "answer", "outcome", "collection_size", "tw_input", "time_ms", "error",
)


def _spec_of(entry):
    spec = entry["spec"]
    if isinstance(spec, GeneratorSpec):
        return spec
    return GeneratorSpec(**spec)


def bench(suite, budget=None):
    """Run the suite and return result rows, one per suite entry.

    Each entry is a dict: {"spec": GeneratorSpec or kwargs dict,
    "problem": "lob"|"iob"|"kpath", "k": int, "root": int (solvers),
    "b": int (kpath only)}. Budget and contract failures land in the
    row's error column and the run keeps going.
    """
    rows = []
    for index, entry in enumerate(suite):
        spec = _spec_of(entry)
        digraph = generate(spec)
        problem = entry["problem"]
        k = entry["k"]
        root = entry.get("root")
        row = {name: None for name in BENCH_FIELDS}
        row.update({
            "instance": index,
            "family": spec.family,
            "n": digraph.n,
            "m": digraph.m,
            "problem": problem,
            "k": k,
            "root": root,
            "b": entry.get("b"),
            "tw_input": treewidth_upper_bound(underlying_graph(digraph)),
        })
        start = time.perf_counter()
        try:
            if problem == "lob":
                res = solve_lob(digraph, k, root=root, witness=False)
                row["answer"] = res.satisfiable
                row["outcome"] = res.reports[-1].outcome if res.reports else None
            elif problem == "iob":
                kwargs = {} if budget is None else {"budget": budget}
                res = solve_iob(digraph, k, root=root, witness=False, **kwargs)
                row["answer"] = res.satisfiable
                if res.reports:
                    row["outcome"] = res.reports[-1]["outcome"]
                    row["collection_size"] = res.reports[-1]["collection_size"]
            elif problem == "kpath":
                kwargs = {} if budget is None else {"budget": budget}
                res = solve_kpath_ballcover(digraph, k, entry["b"], **kwargs)
                row["answer"] = res.satisfiable
                row["outcome"] = "hit" if res.satisfiable else "exhausted"
            else:
                raise ValueError(f"unknown problem {problem!r}")
        except (BudgetError, KernelContractError) as exc:
            row["error"] = str(exc)
        row["time_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
        rows.append(row)
    return rows


def rows_to_csv(rows, fields=BENCH_FIELDS):
    """Render result rows as CSV text with a fixed header."""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(fields))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()

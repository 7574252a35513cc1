"""Command-line front end.

Subcommands: solve-lob, solve-iob, solve-kpath, verify, analyze,
generate, bench. Instances travel in the plain text format ("n m", arc
lines, optional "root r" line); results are JSON by default, CSV on
request. Exit codes: 0 success (a "no" answer is a success), 2 for
unusable input or arguments, 3 for budget or kernel-contract failures,
4 when verify catches a solver/oracle mismatch. Every nonzero exit
prints one "error: ..." line on stderr.
"""

import argparse
import json
import sys

from .digraph import ParseError, parse_instance, serialize_instance
from .errors import BudgetError, KernelContractError
from .oracle import brute_max_leaves, brute_max_internal, brute_longest_path
from .leaf_pipeline import solve_lob
from .internal_pipeline import solve_iob, DEFAULT_COLLECTION_BUDGET
from .ballcover import solve_kpath_ballcover, DEFAULT_SUBSET_BUDGET
from .analysis import analyze, bench, rows_to_csv, ANALYZE_FIELDS
from .generators import GeneratorSpec, generate


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_instance(args):
    digraph, file_root = parse_instance(_read_input(args.input))
    root = args.root if args.root is not None else file_root
    return digraph, root


def _tree_payload(tree):
    if tree is None:
        return None
    return {"root": tree.root, "arcs": sorted(tree.arcs())}


def _emit(payload, fmt, out=None):
    out = out or sys.stdout
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        if rows and set(rows[0]) == set(ANALYZE_FIELDS):
            fields = ANALYZE_FIELDS
        else:
            fields = list(rows[0]) if rows else []
        flat = []
        for row in rows:
            flat.append({
                key: json.dumps(value, sort_keys=True)
                if isinstance(value, (dict, list)) else value
                for key, value in row.items()
            })
        out.write(rows_to_csv(flat, fields))
    else:
        out.write(json.dumps(payload, indent=2, sort_keys=True))
        out.write("\n")


def _cmd_solve_lob(args):
    digraph, root = _load_instance(args)
    res = solve_lob(digraph, args.k, root=root, witness=not args.no_witness)
    payload = {
        "problem": "lob",
        "answer": res.satisfiable,
        "k": args.k,
        "root": res.root,
        "witness": _tree_payload(res.witness),
        "reports": [r.as_dict() for r in res.reports],
    }
    _emit(payload, args.format)
    return 0


def _cmd_solve_iob(args):
    digraph, root = _load_instance(args)
    res = solve_iob(digraph, args.k, root=root, budget=args.budget,
                    witness=not args.no_witness)
    payload = {
        "problem": "iob",
        "answer": res.satisfiable,
        "k": args.k,
        "root": res.root,
        "witness": _tree_payload(res.witness),
        "reports": res.reports,
    }
    _emit(payload, args.format)
    return 0


def _cmd_solve_kpath(args):
    digraph, _ = _load_instance(args)
    res = solve_kpath_ballcover(digraph, args.k, args.b, budget=args.budget)
    payload = {
        "problem": "kpath",
        "answer": res.satisfiable,
        "k": args.k,
        "b": args.b,
        "path": res.witness,
        "stats": {key: value for key, value in res.stats.items()
                  if key != "hit_subset"},
    }
    _emit(payload, args.format)
    return 0


def _oracle_answer(problem, digraph, k, root):
    if problem == "lob":
        def reach(r):
            best = brute_max_leaves(digraph, r)
            return best is not None and best >= k
    elif problem == "iob":
        def reach(r):
            best = brute_max_internal(digraph, r)
            return best is not None and best >= k
    else:
        best, _ = brute_longest_path(digraph)
        return best >= k
    roots = [root] if root is not None else sorted(digraph.vertices)
    return any(reach(r) for r in roots)


def _cmd_verify(args):
    digraph, root = _load_instance(args)
    if args.problem == "lob":
        solver = solve_lob(digraph, args.k, root=root).satisfiable
    elif args.problem == "iob":
        solver = solve_iob(digraph, args.k, root=root,
                           budget=args.budget).satisfiable
    else:
        if args.b is None:
            raise ValueError("--b is required for --problem kpath")
        solver = solve_kpath_ballcover(digraph, args.k, args.b,
                                       budget=args.budget).satisfiable
    oracle = _oracle_answer(args.problem, digraph, args.k, root)
    payload = {
        "problem": args.problem,
        "k": args.k,
        "root": root,
        "solver": solver,
        "oracle": oracle,
        "match": solver == oracle,
    }
    _emit(payload, args.format)
    if not payload["match"]:
        print(f"error: verify mismatch: solver={solver} oracle={oracle}",
              file=sys.stderr)
        return 4
    return 0


def _cmd_analyze(args):
    digraph, root = _load_instance(args)
    if root is None:
        root = min(digraph.vertices)
    _emit(analyze(digraph, root, args.k), args.format)
    return 0


def _cmd_generate(args):
    spec = GeneratorSpec(args.family, rows=args.rows, cols=args.cols,
                         n=args.n, m=args.m, seed=args.seed, p2=args.p2)
    text = serialize_instance(generate(spec), root=args.root)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _default_suite():
    suite = []
    for side in (3, 4):
        spec = {"family": "grid", "rows": side, "cols": side,
                "seed": side, "p2": 0.7}
        suite.append({"spec": spec, "problem": "lob", "k": 3, "root": 0})
        suite.append({"spec": spec, "problem": "iob", "k": 3, "root": 0})
        suite.append({"spec": spec, "problem": "kpath", "k": 3, "b": 2})
    return suite


def _cmd_bench(args):
    if args.suite:
        with open(args.suite, "r", encoding="utf-8") as handle:
            suite = json.load(handle)
    else:
        suite = _default_suite()
    rows = bench(suite, budget=args.budget)
    if args.format == "csv":
        text = rows_to_csv(rows)
        if args.output and args.output != "-":
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(rows, "json")
    return 0


def _add_common(sub, *, instance=True, needs_k=True):
    if instance:
        sub.add_argument("--input", required=True,
                         help="instance file, or - for stdin")
        sub.add_argument("--root", type=int, default=None,
                         help="root vertex; overrides the file's root line")
    if needs_k:
        sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--deterministic", action="store_true",
                     help="force sequential processing (already the default)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="outbranching",
        description="Solvers for leafy out-branchings, internal-heavy "
                    "out-branchings, and long directed paths.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("solve-lob", help="many-leaf spanning out-tree")
    _add_common(sub)
    sub.add_argument("--no-witness", action="store_true")
    sub.set_defaults(func=_cmd_solve_lob)

    sub = commands.add_parser("solve-iob",
                              help="many-internal spanning out-tree")
    _add_common(sub)
    sub.add_argument("--no-witness", action="store_true")
    sub.add_argument("--budget", type=int, default=DEFAULT_COLLECTION_BUDGET)
    sub.set_defaults(func=_cmd_solve_iob)

    sub = commands.add_parser("solve-kpath", help="long directed path")
    _add_common(sub)
    sub.add_argument("--b", type=int, required=True, help="ball count")
    sub.add_argument("--budget", type=int, default=DEFAULT_SUBSET_BUDGET)
    sub.set_defaults(func=_cmd_solve_kpath)

    sub = commands.add_parser("verify",
                              help="cross-check a solver against the oracle")
    _add_common(sub)
    sub.add_argument("--problem", choices=("lob", "iob", "kpath"),
                     required=True)
    sub.add_argument("--b", type=int, default=None)
    sub.add_argument("--budget", type=int, default=None)
    sub.set_defaults(func=_cmd_verify)

    sub = commands.add_parser("analyze", help="structural reduction report")
    _add_common(sub)
    sub.set_defaults(func=_cmd_analyze)

    sub = commands.add_parser("generate", help="emit a corpus instance")
    _add_common(sub, instance=False, needs_k=False)
    sub.add_argument("--family", choices=("grid", "random-sparse"),
                     required=True)
    sub.add_argument("--rows", type=int)
    sub.add_argument("--cols", type=int)
    sub.add_argument("--n", type=int)
    sub.add_argument("--m", type=int)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--p2", type=float, default=1.0)
    sub.add_argument("--root", type=int, default=None)
    sub.add_argument("--output", default="-")
    sub.set_defaults(func=_cmd_generate)

    sub = commands.add_parser("bench", help="run a benchmark suite")
    _add_common(sub, instance=False, needs_k=False)
    sub.add_argument("--suite", help="JSON suite file; omit for a sample")
    sub.add_argument("--budget", type=int, default=None)
    sub.add_argument("--output", default="-")
    sub.set_defaults(func=_cmd_bench, format="csv")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error: budget: {exc}", file=sys.stderr)
        return 3
    except KernelContractError as exc:
        print(f"error: contract: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: invalid: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

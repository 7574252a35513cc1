"""Benchmark the three solvers across a small grid ladder.

Produces the same CSV the `outbranching bench` subcommand emits.  Run
with `python3 demos/benchmark_grids.py`.
"""

from outbranching.analysis import bench, rows_to_csv
from outbranching.generators import GeneratorSpec


def main():
    suite = []
    for side in (3, 4, 5):
        spec = GeneratorSpec("grid", rows=side, cols=side, seed=0, p2=1.0)
        suite.append({"spec": spec, "problem": "lob", "k": side, "root": 0})
        suite.append({"spec": spec, "problem": "iob", "k": 3, "root": 0})
        suite.append({"spec": spec, "problem": "kpath",
                      "k": 2 * side - 2, "b": 2})
    rows = bench(suite)
    print(rows_to_csv(rows))
    slow = max(rows, key=lambda r: r["time_ms"])
    print(f"slowest row: {slow['problem']} on {slow['n']} vertices at "
          f"k={slow['k']}, {slow['time_ms']} ms")


if __name__ == "__main__":
    main()

"""Time the compiled reduction loop against the pure-Python one.

Both backends run on identical generated inputs; every line reports the two
timings, the speedup and whether outputs and counters agreed.

    python3 benchmarks/compare_kernels.py --lengths 250,500,1000 --seeds 3
"""

import argparse

from flipred.bench import compare_kernels, make_cells


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--settings", default="convex,geometric,combinatorial")
    ap.add_argument("--lengths", default="250,500,1000")
    ap.add_argument("--redundancies", default="2")
    ap.add_argument("--seeds", type=int, default=2)
    args = ap.parse_args()
    cells = make_cells(
        args.settings.split(","),
        [int(x) for x in args.lengths.split(",")],
        [float(x) for x in args.redundancies.split(",")],
        list(range(args.seeds)),
    )
    results = compare_kernels(cells)
    for res in results:
        print(res.line())
    speedups = sorted(r.speedup for r in results)
    print(f"median speedup {speedups[len(speedups) // 2]:.1f}x; all identical: {all(r.identical for r in results)}")


if __name__ == "__main__":
    main()

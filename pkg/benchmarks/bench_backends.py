"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_backends.py --sizes 1000,1e5,1e6:1e6 --reps 5
"""
import argparse
import sys

from modenergy import kernels
from modenergy.bench import disagreements, parse_sizes, run_bench

DEFAULT_SIZES = "1000,10000,100000,1e6:1e6,1e9:1e9"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default=DEFAULT_SIZES)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--algos", default="naive,grouped,block,divisor-batch,diagonal")
    args = ap.parse_args(argv)

    found = kernels.available()
    if "compiled" not in found:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    rows = run_bench(parse_sizes(args.sizes), reps=args.reps,
                     algos=tuple(args.algos.split(",")), backend="both")
    timed = {(r.algo, r.m, r.n, r.backend): r.median_ns for r in rows}

    print(f"{'algo':<14}{'m':>12}{'n':>12}{'python ms':>12}{'compiled ms':>13}{'speedup':>9}")
    for r in rows:
        if r.backend != "compiled":
            continue
        py = timed.get((r.algo, r.m, r.n, "python"))
        py_ms = f"{py / 1e6:.3f}" if py is not None else "skipped"
        speed = f"{py / max(r.median_ns, 1):.0f}x" if py is not None else "-"
        print(f"{r.algo:<14}{r.m:>12}{r.n:>12}{py_ms:>12}{r.median_ns / 1e6:>13.3f}{speed:>9}")

    bad = disagreements(rows)
    if bad:
        print(f"backends disagree at {bad}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

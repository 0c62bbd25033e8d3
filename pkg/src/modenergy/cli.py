"""Command-line interface.

Exit status: 0 success, 1 identity-check failure, 2 usage error,
3 capacity or limit error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from modenergy import kernels
from modenergy.bench import BenchRow, disagreements, grouped_bound, parse_sizes, run_bench
from modenergy.energy import ALGORITHMS, energy, select_algorithm
from modenergy.errors import CapacityError, CapExceeded
from modenergy.identities import SUITES, SuiteConfig, is_prime_via_energy, run_suite
from modenergy.sieve import DEFAULT_BOUND, HARD_CAP, Sieve, iter_energy_range
from modenergy.table import CertificationError, audit_table, mismatches

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
MAX_RANGE = 10**8


class UsageError(Exception):
    pass


def _sieve(args, bound: int) -> Sieve:
    """Sieve sized to ``bound``, refusing anything above ``--sieve-bound``."""
    limit = args.sieve_bound
    if bound > limit:
        raise CapExceeded(f"needs a sieve up to {bound}, above --sieve-bound {limit}")
    return Sieve(max(bound, 1), cap=limit)


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _json(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def cmd_eval(args, out) -> int:
    if args.m < 1 or args.n < 0:
        raise UsageError("need --m >= 1 and --n >= 0")
    algo = args.algo
    sieve = None
    if algo in ("divisor-batch", "diagonal"):
        if algo == "diagonal" and args.m != args.n:
            raise UsageError("--algo diagonal requires --m == --n")
        sieve = _sieve(args, args.n)
    if algo == "auto":
        algo = select_algorithm(args.m, args.n)
    t0 = time.perf_counter_ns()
    value = energy(args.m, args.n, algo, sieve)
    elapsed = time.perf_counter_ns() - t0
    record = {"m": args.m, "n": args.n, "value": str(value), "algo": algo}
    if args.timing:
        record["elapsed_ns"] = elapsed
    if args.format == "json":
        _json(record, out)
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(record.keys())
        w.writerow(record.values())
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_range(args, out) -> int:
    if args.m < 1 or args.n_start < 0 or args.n_end < args.n_start:
        raise UsageError("need --m >= 1 and 0 <= --n-start <= --n-end")
    if args.n_end - args.n_start + 1 > MAX_RANGE:
        raise CapExceeded(f"range length exceeds {MAX_RANGE}")
    sieve = _sieve(args, args.n_end)
    rows = iter_energy_range(args.m, args.n_start, args.n_end, sieve.spf)
    if args.format == "csv":
        w = _writer(out)
        w.writerow(("m", "n", "value"))
        for n, v in rows:
            w.writerow((args.m, n, v))
    elif args.format == "json":
        out.write("[")
        for i, (n, v) in enumerate(rows):
            out.write(("," if i else "") + json.dumps({"m": args.m, "n": n, "value": str(v)}))
        out.write("]\n")
    else:
        for n, v in rows:
            out.write(f"{n}\t{v}\n")
    return EXIT_OK


def _suites(text: str) -> tuple[str, ...]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if "all" in names:
        return SUITES
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; valid: all, {', '.join(SUITES)}")
    return tuple(names)


def cmd_verify(args, out) -> int:
    config = SuiteConfig(
        suites=_suites(args.suites), max_m=args.max_m, max_n=args.max_n, max_t=args.max_t,
        samples=args.samples, seed=args.seed,
    )
    bound = config.sieve_bound()
    sieve = _sieve(args, bound) if bound else None
    report = run_suite(config, sieve)
    totals = report.totals
    if args.format == "json":
        _json(report.to_dict(), out)
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(("id", "passed", "failed"))
        for ident, row in totals["by_identity"].items():
            w.writerow((ident, row["passed"], row["failed"]))
    else:
        for ident, row in totals["by_identity"].items():
            status = "ok" if row["failed"] == 0 else "FAIL"
            out.write(f"{ident:<13} passed={row['passed']:<7} failed={row['failed']:<5} {status}\n")
        for c in report.failures[:20]:
            out.write(f"  failure {c.identity_id} {c.params}: {c.witness}\n")
        for claim, count in totals["findings_by_claim"].items():
            first = next(f for f in report.findings if f.claim == claim)
            out.write(f"finding {claim}: {count} counterexamples, first {first.params}\n")
        out.write(f"checks={totals['checks']} failed={totals['failed']} findings={totals['findings']}\n")
    return EXIT_FAIL if totals["failed"] else EXIT_OK


def cmd_prime(args, out) -> int:
    n = args.n
    if n < 2:
        raise UsageError("--n must be >= 2")
    s = _sieve(args, n).summatory
    prime = is_prime_via_energy(n, s)
    sig = s.sigma(n)
    diff = 2 * n - 1 - sig
    verdict = "prime" if prime else "composite"
    if args.format == "json":
        _json({"n": n, "prime": prime, "sigma": str(sig), "diff": str(diff)}, out)
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(("n", "prime", "sigma", "diff"))
        w.writerow((n, int(prime), sig, diff))
    else:
        out.write(f"{n} {verdict} (sigma={sig}, E_n(n)-E_n-1(n-1)={diff}, n-2={n - 2})\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    sieve = _sieve(args, args.n_max)
    try:
        rows = audit_table(args.n_max, sieve)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    bad = mismatches(rows)
    compared = sum(r.published is not None for r in rows)
    if args.format == "json":
        _json({
            "rows": [{"n": r.n, "computed": str(r.computed),
                      "published": None if r.published is None else str(r.published),
                      "status": r.status} for r in rows],
            "compared": compared,
            "mismatches": len(bad),
        }, out)
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(("n", "computed", "published", "status"))
        for r in rows:
            w.writerow((r.n, r.computed, "" if r.published is None else r.published, r.status))
    else:
        out.write(f"{'n':>6} {'computed':>14} {'published':>10}  status\n")
        for r in rows:
            pub = "" if r.published is None else r.published
            out.write(f"{r.n:>6} {r.computed:>14} {pub:>10}  {r.status}\n")
        out.write(f"mismatches: {len(bad)} of {compared} published values"
                  + (f" (first at n={bad[0].n})" if bad else "") + "\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    try:
        sizes = parse_sizes(args.sizes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    algos = ALGORITHMS if args.algos == "all" else tuple(a.strip() for a in args.algos.split(","))
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise UsageError(f"unknown algorithm(s): {', '.join(unknown)}")
    if args.reps < 3:
        raise UsageError("--reps must be >= 3")
    rows = run_bench(sizes, args.reps, algos, args.backend, sieve_cap=args.sieve_bound)
    if args.format == "json":
        _json([{f: (str(v) if f == "value" else v) for f, v in zip(BenchRow.FIELDS, r.as_tuple())}
               for r in rows], out)
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(BenchRow.FIELDS)
        w.writerows(r.as_tuple() for r in rows)
    else:
        out.write(f"{'algo':<14}{'backend':<10}{'m':>14}{'n':>14}{'median_ns':>14}{'work':>14}\n")
        for r in rows:
            out.write(f"{r.algo:<14}{r.backend:<10}{r.m:>14}{r.n:>14}{r.median_ns:>14}{r.work:>14}\n")
    status = EXIT_OK
    for r in rows:
        if r.algo == "grouped" and r.work > grouped_bound(r.m, r.n):
            print(f"error: grouped used {r.work} blocks at m={r.m}, n={r.n}", file=sys.stderr)
            status = EXIT_FAIL
    for m, n in disagreements(rows):
        print(f"error: algorithms disagree at m={m}, n={n}", file=sys.stderr)
        status = EXIT_FAIL
    return status


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--sieve-bound", type=int, default=argparse.SUPPRESS,
                        help=f"largest sieve the command may build (default {DEFAULT_BOUND}, max {HARD_CAP})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="modenergy", parents=[common],
        description="Remainder sums E_m(n) = sum_{k=1}^m (n mod k).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate E_m(n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--algo", choices=("auto",) + ALGORITHMS, default="auto")
    p.add_argument("--timing", action="store_true", help="include elapsed_ns in csv/json output")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("range", parents=[common], help="stream E_m(n) for consecutive n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-start", type=int, required=True)
    p.add_argument("--n-end", type=int, required=True)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("--suites", default="all", help=f"comma list from: all, {', '.join(SUITES)}")
    p.add_argument("--max-m", type=int, default=64)
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--max-t", type=int, default=12)
    p.add_argument("--samples", type=int, default=32, help="seeded random cases per suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prime", parents=[common], help="primality via diagonal differences")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("table", parents=[common], help="audit the published diagonal table")
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bench", parents=[common], help="time the evaluators")
    p.add_argument("--sizes", default="10000,1000000", help="comma list of N (m = n) or M:N")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--algos", default="all")
    p.add_argument("--backend", choices=("auto", "compiled", "python", "both"), default="auto")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.seed = getattr(args, "seed", 0)
    args.sieve_bound = getattr(args, "sieve_bound", DEFAULT_BOUND)
    if not hasattr(args, "format"):
        args.format = "json" if args.command == "verify" else "text"
    try:
        if args.sieve_bound < 1:
            raise UsageError("--sieve-bound must be >= 1")
        if args.sieve_bound > HARD_CAP:
            raise CapExceeded(f"--sieve-bound {args.sieve_bound} exceeds the hard cap {HARD_CAP}")
        return args.func(args, out)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"{parser.prog} {args.command}: limit: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

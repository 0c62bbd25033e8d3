"""Exit criteria, one test per criterion, each at its stated tolerance."""
import csv
import io
import json
import random
import time
from math import isqrt

from modenergy import kernels
from modenergy.arith import lcm_upto
from modenergy.bench import run_bench
from modenergy.cli import main
from modenergy.energy import (
    energy,
    energy_block_at,
    energy_diagonal,
    energy_grouped,
    energy_naive,
    grouped_work,
)
from modenergy.identities import is_prime_trial, is_prime_via_energy
from modenergy.sieve import Sieve, energy_divisor_batch
from modenergy.table import audit_table, mismatches

import oracles


def cli(*argv):
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(list(argv), out=out)
    return code, out.getvalue(), time.perf_counter() - t0


def block_bound(n):
    return 2 * (isqrt(n - 1) + 1) + 2


def test_1_worked_examples(criterion):
    results = []
    for m, n, want in ((5, 12, "2"), (6, 7, "8")):
        code, text, _ = cli("eval", "--m", str(m), "--n", str(n))
        _, rec, _ = cli("eval", "--m", str(m), "--n", str(n), "--format", "json", "--timing")
        rec = json.loads(rec)
        results.append((code == 0 and text == want + "\n" and rec["value"] == want, rec["elapsed_ns"]))
    ok = all(r for r, _ in results) and all(ns < 1_000_000 for _, ns in results)
    criterion(1, "worked examples E_5(12)=2, E_6(7)=8, < 1 ms", ok,
              f"eval times {[ns for _, ns in results]} ns")


def test_2_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    sieve = Sieve(500)
    s, spf = sieve.summatory, sieve.spf
    mismatched = []
    for m in range(1, 501):
        for n in range(1, 501):
            v = energy_naive(m, n)
            if not (energy_grouped(m, n) == energy_block_at(m, n) == energy_divisor_batch(m, n, spf) == v):
                mismatched.append((m, n))
            if m == n and energy_diagonal(n, s) != v:
                mismatched.append((m, n, "diagonal"))
    elapsed = time.perf_counter() - t0
    criterion(2, "naive = grouped = block = divisor-batch (= diagonal) on 1..500 squared, < 60 s",
              not mismatched and elapsed < 60, f"{len(mismatched)} mismatches, {elapsed:.1f} s")


def test_3_identity_suites(criterion):
    code, out, elapsed = cli("verify", "--suites", "all", "--max-m", "64", "--max-n", "64", "--seed", "0")
    doc = json.loads(out)
    by_id = doc["totals"]["by_identity"]
    required = {"bounds", "symmetry", "floor-sum", "divisor-sum", "grouping", "diagonal",
                "congruence", "recursion", "regimes", "periodicity"}
    ok = (code == 0 and doc["totals"]["failed"] == 0 and required <= set(by_id)
          and max(c["params"]["t"] for c in doc["checks"] if c["id"] == "congruence") == 12
          and max(c["params"]["m"] for c in doc["checks"] if c["id"] == "periodicity") == 20
          and elapsed < 30)
    criterion(3, "verify --suites all (64 x 64, seed 0) exits 0 with no failures, < 30 s", ok,
              f"exit {code}, {doc['totals']['checks']} checks, {doc['totals']['failed']} failed, {elapsed:.1f} s")


def test_4_primality_equivalence(criterion):
    t0 = time.perf_counter()
    s = Sieve(10_000).summatory
    via_energy = [n for n in range(2, 10_001) if is_prime_via_energy(n, s)]
    elapsed = time.perf_counter() - t0
    trial = [n for n in range(2, 10_001) if is_prime_trial(n)]
    ok = via_energy == trial and len(via_energy) == 1229 and elapsed < 5
    criterion(4, "primality via energy matches trial division to 10^4 (1229 primes), < 5 s", ok,
              f"{len(via_energy)} primes, {elapsed:.2f} s")


def test_5_complexity_audit(criterion):
    details = []
    ok = True
    for n in (10**4, 10**6, 10**8):
        value, blocks = grouped_work(n, n)
        ok &= blocks <= block_bound(n)
        if n <= 10**6:
            ok &= value == energy_naive(n, n)
        details.append(f"n={n}: {blocks} <= {block_bound(n)}")
    t0 = time.perf_counter()
    value, blocks = grouped_work(10**9, 10**9)
    big = time.perf_counter() - t0
    ok &= big < 1.0 and blocks <= block_bound(10**9)
    # naive at 10^9 stays out of the bench budget
    logs = []
    rows = run_bench([(10**9, 10**9)], reps=3, algos=("naive", "grouped"), log=logs.append)
    ok &= [r.algo for r in rows] == ["grouped"] and any("skip naive" in x for x in logs)
    criterion(5, "grouped block count <= 2 ceil(sqrt n) + 2; n = m = 10^9 in < 1 s", ok,
              "; ".join(details) + f"; 10^9 took {big * 1e3:.1f} ms [{kernels.BACKEND}]")


def test_6_extremal_classes(criterion):
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 21):
        period = lcm_upto(m).value
        for t in (1, 2, 3):
            if energy(m, t * period) != 0:
                bad.append((m, t, "zero"))
            if energy(m, t * period - 1) != m * (m - 1) // 2:
                bad.append((m, t, "max"))
    elapsed = time.perf_counter() - t0
    criterion(6, "E_m(t L_m) = 0 and E_m(t L_m - 1) = m(m-1)/2 for m <= 20, t <= 3, < 1 s",
              not bad and elapsed < 1, f"{len(bad)} violations, {elapsed * 1e3:.1f} ms")


def test_7_table_audit(criterion):
    code, out, _ = cli("table", "--n-max", "20", "--format", "csv")
    rows = {int(r["n"]): r for r in csv.DictReader(io.StringIO(out))}
    certified = all(int(rows[n]["computed"]) == oracles.energy(n, n) for n in rows)
    audit = audit_table(20)
    ok = (code == 0 and certified
          and all(rows[n]["status"] == "MATCH" for n in (1, 2, 3))
          and (rows[4]["computed"], rows[4]["published"], rows[4]["status"]) == ("1", "4", "MISMATCH")
          and len(mismatches(audit)) > 0)
    criterion(7, "table audit: MATCH n = 1..3, MISMATCH n = 4 (1 vs 4)", ok,
              f"{len(mismatches(audit))} mismatches of 20")


def test_8_prime_claim_finding(criterion):
    code, out, _ = cli("verify", "--suites", "prime-claims", "--seed", "0")
    doc = json.loads(out)
    cfg = doc["config"]
    hit = [f for f in doc["findings"]
           if f["claim"] == "m-prime-congruence" and f["params"] == {"p": 3, "n": 3, "E": 1}]
    ok = code == 0 and hit and cfg["prime_max"] == 50 and cfg["prime_multiples"] == 20
    criterion(8, "m-prime congruence counterexample (p=3, n=3, E=1) reported as a finding, exit 0", ok,
              f"exit {code}, {len(doc['findings'])} findings")


def test_9_range_streaming(criterion):
    code, out, elapsed = cli("range", "--m", "100", "--n-start", "1", "--n-end", "100000", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    rng = random.Random(0)
    points = rng.sample(range(len(rows)), 20)
    agree = all(int(rows[i]["value"]) == oracles.energy(100, int(rows[i]["n"])) for i in points)
    ok = code == 0 and len(rows) == 100_000 and agree and elapsed < 2
    criterion(9, "range m=100, n=1..10^5 in < 2 s, exact at 20 seeded points", ok,
              f"{len(rows)} rows, {elapsed:.2f} s")

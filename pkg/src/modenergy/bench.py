"""Timing harness for the evaluators and the two kernel backends."""
from __future__ import annotations

import statistics
import sys
import time
from dataclasses import dataclass
from math import isqrt

from modenergy import kernels
from modenergy.arith import check_input
from modenergy.energy import ALGORITHMS

#: Largest m the O(m) loops are timed at, per backend. 10^9 moduli would take
#: tens of seconds even compiled, so it is never attempted.
LINEAR_BUDGET = {"compiled": 10**8, "python": 10**6}
#: Largest n for the divisor double sum (cost ~ n log n divisor visits).
BATCH_BUDGET = {"compiled": 10**6, "python": 2 * 10**4}


@dataclass
class BenchRow:
    algo: str
    m: int
    n: int
    reps: int
    median_ns: int
    work: int
    value: int
    backend: str

    FIELDS = ("algo", "m", "n", "reps", "median_ns", "work", "value", "backend")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)


def _parse_int(text: str) -> int:
    """Integer literal, also accepting exact powers like ``1e6``."""
    text = text.strip().lower()
    if "e" in text:
        mant, exp = text.split("e")
        return int(mant) * 10 ** int(exp)
    return int(text)


def parse_sizes(text: str) -> list[tuple[int, int]]:
    """``"100,5:12"`` -> ``[(100, 100), (5, 12)]``; a bare number means m = n."""
    sizes = []
    for item in text.split(","):
        parts = item.split(":")
        if len(parts) not in (1, 2) or not all(p.strip() for p in parts):
            raise ValueError(f"malformed size {item!r}; expected N or M:N")
        m = _parse_int(parts[0])
        n = _parse_int(parts[-1])
        check_input("m", m, lo=1)
        check_input("n", n, lo=1)
        sizes.append((m, n))
    return sizes


def grouped_bound(m: int, n: int) -> int:
    """``2*ceil(sqrt(min(m, n))) + 2``, the block-count ceiling."""
    s = min(m, n)
    return 2 * (isqrt(s - 1) + 1) + 2


def _time(fn, reps: int) -> tuple[int, object]:
    samples = []
    result = None
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        result = fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(statistics.median(samples)), result


def run_bench(sizes, reps: int = 5, algos=ALGORITHMS, backend: str = "auto",
              sieve_cap: int = 10**7, log=None) -> list[BenchRow]:
    """Time each algorithm at each ``(m, n)``; skipped combinations go to ``log``."""
    if reps < 3:
        raise ValueError("reps must be >= 3")
    log = log or (lambda msg: print(msg, file=sys.stderr))
    backends = list(kernels.available().values()) if backend == "both" else [kernels.get(backend)]
    rows = []
    for be in backends:
        linear = LINEAR_BUDGET[be.NAME]
        batch = BATCH_BUDGET[be.NAME]
        tables = {}

        def spf(bound):
            if bound not in tables:
                tables[bound] = be.build_spf(bound)
            return tables[bound]

        for m, n in sizes:
            for algo in algos:
                if algo in ("naive", "block") and m > linear:
                    log(f"skip {algo} m={m} n={n} [{be.NAME}]: m above linear budget {linear}")
                    continue
                if algo == "divisor-batch" and (n > batch or n > sieve_cap):
                    log(f"skip divisor-batch m={m} n={n} [{be.NAME}]: n above batch budget")
                    continue
                if algo == "diagonal" and (m != n or n > sieve_cap):
                    log(f"skip diagonal m={m} n={n} [{be.NAME}]: needs m == n <= sieve cap")
                    continue
                if algo == "naive":
                    med, value = _time(lambda: be.naive_sum(m, n), reps)
                    work = m
                elif algo == "grouped":
                    med, (value, work) = _time(lambda: be.grouped_sum(m, n), reps)
                elif algo == "block":
                    q, r = divmod(n, m)
                    e_mm = be.grouped_sum(m, m)[0]
                    med, corr = _time(lambda: be.block_correction(m, q, r), reps)
                    value = q * e_mm + m * r - corr
                    work = m
                elif algo == "divisor-batch":
                    table = spf(n)
                    med, (inner, work) = _time(lambda: be.divisor_batch(table, m, n), reps)
                    value = m * n - inner
                elif algo == "diagonal":
                    prefix = be.sigma_prefix(spf(n), n)
                    med, value = _time(lambda: n * n - prefix[n], reps)
                    work = 1
                else:
                    raise ValueError(f"unknown algorithm {algo!r}")
                rows.append(BenchRow(algo, m, n, reps, med, work, value, be.NAME))
    return rows


def disagreements(rows: list[BenchRow]) -> list[tuple[int, int]]:
    """Sizes at which the algorithms/backends returned different values."""
    seen: dict[tuple[int, int], set[int]] = {}
    for r in rows:
        seen.setdefault((r.m, r.n), set()).add(r.value)
    return [k for k, v in seen.items() if len(v) > 1]

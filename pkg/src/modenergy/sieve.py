"""Smallest-prime-factor sieve and the divisor-sum machinery built on it.

Tables are immutable after construction and safe to share between threads.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from modenergy import kernels
from modenergy.arith import check_input, wide
from modenergy.energy import energy_grouped
from modenergy.errors import CapExceeded, RangeExceeded

#: Hard ceiling on table entries (about 400 MB for the SPF array).
HARD_CAP = 10**8
#: Default sieve bound used by the CLI.
DEFAULT_BOUND = 10**7


@dataclass(frozen=True)
class SpfTable:
    bound: int
    spf: array = field(repr=False)

    def __getitem__(self, d: int) -> int:
        return self.spf[d]

    def check(self, d: int) -> None:
        if d > self.bound:
            raise RangeExceeded(f"{d} is beyond the sieve bound {self.bound}")


class DivisorList(NamedTuple):
    d: int
    divisors: list[int]


@dataclass(frozen=True)
class SummatorySigma:
    """``prefix[n] = sigma(1) + ... + sigma(n)`` for ``n <= bound``."""

    bound: int
    prefix: array = field(repr=False)

    def sigma(self, n: int) -> int:
        return self.prefix[n] - self.prefix[n - 1]


@dataclass
class EnergySeries:
    m: int
    n0: int
    n1: int
    values: list[int]

    def items(self) -> Iterator[tuple[int, int]]:
        return zip(range(self.n0, self.n1 + 1), self.values)


def build_spf(bound: int, cap: int = HARD_CAP) -> SpfTable:
    """Sieve smallest prime factors for ``2 <= d <= bound``."""
    if bound < 1:
        raise ValueError(f"sieve bound must be >= 1, got {bound}")
    if bound > min(cap, HARD_CAP):
        raise CapExceeded(f"sieve bound {bound} exceeds the cap {min(cap, HARD_CAP)}")
    return SpfTable(bound, kernels.build_spf(bound))


def factorize(d: int, t: SpfTable) -> list[tuple[int, int]]:
    """Prime factorisation of ``d`` as ``[(p, e), ...]`` with increasing ``p``."""
    t.check(d)
    out = []
    while d > 1:
        p = t.spf[d]
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        out.append((p, e))
    return out


def divisors(d: int, t: SpfTable) -> DivisorList:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    divs = [1]
    for p, e in factorize(d, t):
        divs = [x * p**i for x in divs for i in range(e + 1)]
    return DivisorList(d, sorted(divs))


def sigma(d: int, t: SpfTable) -> int:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    t.check(d)
    return kernels.bounded_divisor_sum(t.spf, d, d)


def sigma_bounded(d: int, m: int, t: SpfTable) -> int:
    """Sum of the divisors of ``d`` that are ``<= m``."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    t.check(d)
    return kernels.bounded_divisor_sum(t.spf, d, m)


def summatory_sigma(bound: int, t: SpfTable) -> SummatorySigma:
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    t.check(bound)
    return SummatorySigma(bound, kernels.sigma_prefix(t.spf, bound))


def divisor_batch_work(m: int, n: int, t: SpfTable) -> tuple[int, int]:
    """``(E_m(n), divisors visited)`` from ``mn - sum_{d<=n} sigma_{<=m}(d)``.

    Cost is the total divisor count up to ``n``, about ``n log n``; this route is
    kept for cross-checking, not for single queries.
    """
    check_input("m", m, lo=1)
    check_input("n", n, lo=0)
    t.check(n)
    inner, work = kernels.divisor_batch(t.spf, m, n)
    return wide(m * n, "m*n") - inner, work


def energy_divisor_batch(m: int, n: int, t: SpfTable) -> int:
    return divisor_batch_work(m, n, t)[0]


def iter_energy_range(m: int, n0: int, n1: int, t: SpfTable,
                      chunk: int = 1 << 16) -> Iterator[tuple[int, int]]:
    """Yield ``(n, E_m(n))`` for ``n0 <= n <= n1`` using the finite difference
    ``E_m(n+1) = E_m(n) + m - sigma_{<=m}(n+1)``.

    The first value comes from the grouped evaluator; later values are carried
    chunk by chunk so memory stays bounded for long ranges.
    """
    check_input("m", m, lo=1)
    check_input("n0", n0, lo=0)
    check_input("n1", n1, lo=n0)
    t.check(n1)
    start = n0
    value = energy_grouped(m, n0)
    while True:
        stop = min(start + chunk, n1)
        values = kernels.energy_steps(t.spf, m, start, stop, value)
        first = 0 if start == n0 else 1
        for i in range(first, len(values)):
            yield start + i, values[i]
        if stop == n1:
            return
        start, value = stop, values[-1]


def energy_range_incremental(m: int, n0: int, n1: int, t: SpfTable) -> EnergySeries:
    values = [v for _, v in iter_energy_range(m, n0, n1, t)]
    return EnergySeries(m, n0, n1, values)


class Sieve:
    """An SPF table plus its lazily built summatory-sigma prefix."""

    def __init__(self, bound: int, cap: int = HARD_CAP):
        self.spf = build_spf(bound, cap)
        self.bound = bound
        self._summatory: SummatorySigma | None = None

    @property
    def summatory(self) -> SummatorySigma:
        if self._summatory is None:
            self._summatory = summatory_sigma(self.bound, self.spf)
        return self._summatory

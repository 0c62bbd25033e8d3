"""Pure-Python kernels.

Same call signatures and results as the compiled ``_speedups`` module; used
when the extension is unavailable and as the reference side of the backend
benchmark. Arguments are assumed validated by the caller (nonnegative,
at most 2^63 - 1, within the sieve bound).
"""
from __future__ import annotations

from array import array
from math import isqrt

NAME = "python"


def naive_sum(m: int, n: int) -> int:
    total = 0
    for k in range(1, m + 1):
        total += n % k
    return total


def naive_sum_signed(m: int, n: int) -> int:
    return naive_sum(m, n)


def grouped_sum(m: int, n: int) -> tuple[int, int]:
    """Return ``(E_m(n), blocks)`` via quotient blocks on ``[1, min(m, n)]``."""
    lim = min(m, n)
    total = m * n
    blocks = 0
    k = 1
    while k <= lim:
        q = n // k
        hi = min(n // q, lim)
        total -= q * ((hi * (hi + 1) - (k - 1) * k) // 2)
        blocks += 1
        k = hi + 1
    return total, blocks


def block_correction(m: int, q: int, r: int) -> int:
    """``sum_{k<=m} k * floor((q*(m mod k) + r) / k)``."""
    total = 0
    for k in range(1, m + 1):
        total += k * ((q * (m % k) + r) // k)
    return total


def build_spf(bound: int) -> array:
    spf = array("I", range(bound + 1))
    for p in range(2, isqrt(bound) + 1):
        if spf[p] != p:
            continue
        for j in range(p * p, bound + 1, p):
            if spf[j] == j:
                spf[j] = p
    return spf


def sigma_prefix(spf: array, bound: int) -> array:
    prefix = array("Q", bytes(8 * (bound + 1)))
    if bound >= 1:
        prefix[1] = 1
    for d in range(2, bound + 1):
        p = spf[d]
        x, pe = d, 1
        while x % p == 0:
            x //= p
            pe *= p
        s_rest = prefix[x] - prefix[x - 1]
        prefix[d] = prefix[d - 1] + s_rest * ((pe * p - 1) // (p - 1))
    return prefix


def _bounded_divisors(spf, d: int, m: int) -> list[int]:
    divs = [1]
    while d > 1:
        p = spf[d]
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        base = len(divs)
        pw = 1
        for _ in range(e):
            pw *= p
            for i in range(base):
                v = divs[i] * pw
                if v <= m:
                    divs.append(v)
    return divs


def bounded_divisor_sum(spf, d: int, m: int) -> int:
    if m < 1:
        return 0
    return sum(_bounded_divisors(spf, d, m))


def divisor_batch(spf, m: int, n: int) -> tuple[int, int]:
    """Return ``(sum_{d<=n} sigma_{<=m}(d), divisors visited)``."""
    total = 0
    work = 0
    for d in range(1, n + 1):
        divs = _bounded_divisors(spf, d, m)
        total += sum(divs)
        work += len(divs)
    return total, work


def energy_steps(spf, m: int, n0: int, n1: int, base: int) -> list[int]:
    """Values ``E_m(n0..n1)`` by the finite-difference step, starting from ``base``."""
    out = [base]
    e = base
    for n in range(n0, n1):
        e += m - sum(_bounded_divisors(spf, n + 1, m))
        out.append(e)
    return out

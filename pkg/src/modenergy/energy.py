"""Evaluators for the remainder sum ``E_m(n) = sum_{k=1}^m (n mod k)``.

Every evaluator returns an exact ``int``. Strategies:

* :func:`energy_naive`    -- the defining sum, O(m).
* :func:`energy_grouped`  -- ``mn - sum k*floor(n/k)`` over quotient blocks, O(sqrt n).
* :func:`energy_block`    -- ``n = qm + r`` form, reusing a cached ``E_m(m)``, O(m).
* :func:`energy_diagonal` -- ``n^2 - sum_{d<=n} sigma(d)`` from a prefix table, O(1).
* :func:`energy_signed`   -- the defining sum for any integer ``n``.

The divisor-sum route lives in :mod:`modenergy.sieve` since it needs a sieve.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from modenergy import kernels
from modenergy.arith import SIGNED_MAX, SIGNED_MIN, check_input, range_sum, wide
from modenergy.errors import EnergyOverflow, RangeExceeded

#: Algorithm tags, in the order used by reports.
ALGORITHMS = ("naive", "grouped", "block", "divisor-batch", "diagonal")

#: Auto-selection uses the O(m) loop up to this many moduli.
NAIVE_THRESHOLD = 4096

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


class QuotientBlock(NamedTuple):
    """Maximal run ``k_lo..k_hi`` of moduli sharing ``q = n // k``."""

    k_lo: int
    k_hi: int
    q: int


@dataclass(frozen=True)
class BlockDecomposition:
    """``n = q*m + r`` together with ``b[k-1] = m mod k`` for ``k = 1..m``."""

    m: int
    q: int
    r: int
    b: tuple[int, ...]

    @classmethod
    def of(cls, m: int, n: int) -> BlockDecomposition:
        q, r = divmod(n, m)
        return cls(m, q, r, tuple(m % k for k in range(1, m + 1)))

    @property
    def a(self) -> tuple[int, ...]:
        return tuple((self.m - bk) // k for k, bk in enumerate(self.b, start=1))


def _query(m: int, n: int) -> None:
    check_input("m", m, lo=1)
    check_input("n", n, lo=0)


def energy_naive(m: int, n: int) -> int:
    """Direct summation of ``n mod k`` for ``k = 1..m``."""
    _query(m, n)
    return kernels.naive_sum(m, n)


def grouped_work(m: int, n: int) -> tuple[int, int]:
    """Return ``(E_m(n), number of quotient blocks visited)``."""
    _query(m, n)
    return kernels.grouped_sum(m, n)


def energy_grouped(m: int, n: int) -> int:
    """Floor-sum identity evaluated block by block.

    Only ``k <= min(m, n)`` is iterated; moduli ``k > n`` have quotient 0 and
    their contribution ``(m - n) * n`` is already inside the ``m*n`` term.
    """
    return grouped_work(m, n)[0]


def quotient_blocks(m: int, n: int) -> list[QuotientBlock]:
    """Partition ``[1, min(m, n)]`` into maximal constant-quotient runs."""
    _query(m, n)
    lim = min(m, n)
    blocks = []
    k = 1
    while k <= lim:
        q = n // k
        hi = min(n // q, lim)
        blocks.append(QuotientBlock(k, hi, q))
        k = hi + 1
    return blocks


def energy_from_blocks(m: int, n: int, blocks: list[QuotientBlock]) -> int:
    """``mn - sum_j j * (sum of k in block j)``; Python-level twin of the kernel."""
    total = wide(m * n, "m*n")
    for blk in blocks:
        total -= blk.q * range_sum(blk.k_lo, blk.k_hi)
    return total


def energy_block(m: int, q: int, r: int, e_mm: int) -> int:
    """``E_m(qm + r)`` from ``E_m(m)``, the residues ``m mod k`` and a floor correction."""
    check_input("m", m, lo=1)
    check_input("q", q, lo=0)
    if not 0 <= r < m:
        raise ValueError(f"r must lie in [0, m-1], got r={r}, m={m}")
    check_input("n = q*m + r", q * m + r)
    return q * e_mm + m * r - kernels.block_correction(m, q, r)


@lru_cache(maxsize=256)
def diagonal_value(m: int) -> int:
    """``E_m(m)``, memoised for repeated :func:`energy_block` calls."""
    return energy_grouped(m, m)


def energy_block_at(m: int, n: int) -> int:
    """Convenience: :func:`energy_block` with ``q, r = divmod(n, m)``."""
    _query(m, n)
    q, r = divmod(n, m)
    return energy_block(m, q, r, diagonal_value(m))


def energy_diagonal(n: int, s) -> int:
    """``n^2 - S(n)`` where ``s`` is a :class:`~modenergy.sieve.SummatorySigma`."""
    check_input("n", n, lo=1)
    if n > s.bound:
        raise RangeExceeded(f"n = {n} is beyond the sieve bound {s.bound}")
    return n * n - s.prefix[n]


def energy_signed(m: int, n: int) -> int:
    """Defining sum for any integer ``n``, with Euclidean remainders."""
    check_input("m", m, lo=1)
    if not isinstance(n, int):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < SIGNED_MIN or n > SIGNED_MAX:
        raise EnergyOverflow(f"n = {n} is outside the signed 128-bit range")
    if 0 <= n <= _INT64_MAX:
        return kernels.naive_sum(m, n)
    if _INT64_MIN <= n < 0:
        return kernels.naive_sum_signed(m, n)
    return sum(n % k for k in range(1, m + 1))


def select_algorithm(m: int, n: int, summatory=None) -> str:
    """Auto policy: diagonal if ``m == n`` and a table covers it, else naive up to
    :data:`NAIVE_THRESHOLD` moduli, else grouped."""
    if m == n and summatory is not None and n <= summatory.bound:
        return "diagonal"
    return "naive" if m <= NAIVE_THRESHOLD else "grouped"


def energy(m: int, n: int, algo: str = "auto", sieve=None) -> int:
    """Evaluate ``E_m(n)`` with the named algorithm.

    ``sieve`` is a :class:`~modenergy.sieve.Sieve`, required for
    ``divisor-batch`` and ``diagonal``.
    """
    _query(m, n)
    if algo == "auto":
        algo = select_algorithm(m, n, sieve.summatory if sieve is not None else None)
    if algo == "naive":
        return energy_naive(m, n)
    if algo == "grouped":
        return energy_grouped(m, n)
    if algo == "block":
        return energy_block_at(m, n)
    if algo in ("divisor-batch", "diagonal"):
        if sieve is None:
            raise ValueError(f"algorithm {algo!r} needs a sieve")
        if algo == "diagonal":
            if m != n:
                raise ValueError("the diagonal algorithm requires m == n")
            if n == 0:
                return 0
            return energy_diagonal(n, sieve.summatory)
        from modenergy.sieve import energy_divisor_batch

        return energy_divisor_batch(m, n, sieve.spf)
    raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")

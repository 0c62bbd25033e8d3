"""Exact integer primitives shared by the evaluators.

Python integers never wrap, so the 128-bit contract is enforced by explicit
range checks: every value that would need more than 128 bits (unsigned) or
127 bits of magnitude (signed) raises :class:`EnergyOverflow` instead of
being returned.
"""
from __future__ import annotations

import math
from typing import NamedTuple

from modenergy.errors import EnergyOverflow

#: Largest public input for ``m`` and ``n``.
INPUT_MAX = 2**63 - 1
#: Capacity of an unsigned wide integer.
WIDE_MAX = 2**128 - 1
#: Capacity of a signed wide integer (two's complement 128-bit).
SIGNED_MIN = -(2**127)
SIGNED_MAX = 2**127 - 1


class LcmValue(NamedTuple):
    m: int
    value: int


def wide(x: int, what: str = "value") -> int:
    """Return ``x`` unchanged if it fits an unsigned 128-bit integer."""
    if x < 0 or x > WIDE_MAX:
        raise EnergyOverflow(f"{what} = {x} does not fit in 128 bits")
    return x


def signed(x: int, what: str = "value") -> int:
    if x < SIGNED_MIN or x > SIGNED_MAX:
        raise EnergyOverflow(f"{what} = {x} does not fit in signed 128 bits")
    return x


def check_input(name: str, x: int, lo: int = 0) -> int:
    """Validate a public integer argument against ``[lo, INPUT_MAX]``."""
    if not isinstance(x, int) or isinstance(x, bool):
        raise TypeError(f"{name} must be an int, got {type(x).__name__}")
    if x < lo:
        raise ValueError(f"{name} must be >= {lo}, got {x}")
    if x > INPUT_MAX:
        raise EnergyOverflow(f"{name} = {x} exceeds the input cap 2^63 - 1")
    return x


def euclid_mod(n: int, k: int) -> int:
    """Euclidean remainder ``n - k*floor(n/k)``, in ``[0, k-1]`` for any sign of n."""
    if k < 1:
        raise ValueError(f"modulus must be >= 1, got {k}")
    # Python's % floors toward -inf, which is exactly the Euclidean remainder for k > 0.
    return n % k


def range_sum(a: int, b: int) -> int:
    """Sum of the integers ``a..b`` by the closed form ``(b(b+1) - (a-1)a) / 2``."""
    if a < 1 or a > b:
        raise ValueError(f"need 1 <= a <= b, got a={a}, b={b}")
    hi = wide(b * (b + 1), "b(b+1)")
    lo = (a - 1) * a
    return (hi - lo) // 2


def lcm_upto(m: int) -> LcmValue:
    """``lcm(1, ..., m)``; raises :class:`EnergyOverflow` past 128 bits (m >= 89)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    value = 1
    for k in range(2, m + 1):
        value = wide(value // math.gcd(value, k) * k, f"lcm(1..{k})")
    return LcmValue(m, value)

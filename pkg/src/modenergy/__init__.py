"""Remainder sums ``E_m(n) = sum_{k=1}^m (n mod k)``.

Several exact evaluators (direct, quotient-grouped, block recursion, divisor
double sum, diagonal prefix table), an SPF sieve, identity checks with a
brute-force oracle, and a CLI. Hot loops run in a Cython extension when it
is built, else in pure Python; see :mod:`modenergy.kernels`.
"""
from modenergy.arith import euclid_mod, lcm_upto, range_sum
from modenergy.energy import (
    energy,
    energy_block,
    energy_diagonal,
    energy_grouped,
    energy_naive,
    energy_signed,
    quotient_blocks,
)
from modenergy.errors import CapacityError, CapExceeded, EnergyOverflow, NotPrime, RangeExceeded
from modenergy.kernels import BACKEND
from modenergy.sieve import (
    Sieve,
    build_spf,
    divisors,
    energy_divisor_batch,
    energy_range_incremental,
    sigma,
    sigma_bounded,
    summatory_sigma,
)

__version__ = "0.1.0"

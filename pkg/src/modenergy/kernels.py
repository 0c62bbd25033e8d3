"""Backend selection for the hot loops.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_purepy`` module with identical signatures. Setting
``MODENERGY_PURE_PYTHON=1`` forces the fallback (handy for debugging).
"""
from __future__ import annotations

import os
from types import ModuleType

from modenergy import _purepy

try:
    from modenergy import _speedups
except ImportError:  # extension not built
    _speedups = None


def available() -> dict[str, ModuleType]:
    """All importable backends, keyed by name."""
    found = {"python": _purepy}
    if _speedups is not None:
        found["compiled"] = _speedups
    return found


def get(name: str = "auto") -> ModuleType:
    if name == "auto":
        return active
    try:
        return available()[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available (have: {', '.join(available())})") from None


if _speedups is not None and not os.environ.get("MODENERGY_PURE_PYTHON"):
    active: ModuleType = _speedups
else:
    active = _purepy

BACKEND: str = active.NAME

naive_sum = active.naive_sum
naive_sum_signed = active.naive_sum_signed
grouped_sum = active.grouped_sum
block_correction = active.block_correction
build_spf = active.build_spf
sigma_prefix = active.sigma_prefix
bounded_divisor_sum = active.bounded_divisor_sum
divisor_batch = active.divisor_batch
energy_steps = active.energy_steps

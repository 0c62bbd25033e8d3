"""Audit of the published diagonal table ``E_n(n)``, ``n <= 20``.

The printed values are kept verbatim. Most of them (every ``n >= 4``)
disagree with the defining sum, so the audit is expected to report
mismatches; each computed value is cross-checked against the direct sum
before it is reported.
"""
from __future__ import annotations

from dataclasses import dataclass

from modenergy.energy import energy_diagonal, energy_naive
from modenergy.sieve import Sieve

PUBLISHED_DIAGONAL = {
    1: 0, 2: 0, 3: 1, 4: 4, 5: 8, 6: 18, 7: 24,
    8: 40, 9: 54, 10: 80, 11: 110, 12: 168, 13: 156, 14: 180,
    15: 216, 16: 256, 17: 272, 18: 378, 19: 342, 20: 520,
}


@dataclass
class TableRow:
    n: int
    computed: int
    published: int | None

    @property
    def status(self) -> str:
        if self.published is None:
            return "-"
        return "MATCH" if self.computed == self.published else "MISMATCH"


class CertificationError(AssertionError):
    """Diagonal table value disagrees with the direct sum."""


def audit_table(n_max: int, sieve: Sieve | None = None) -> list[TableRow]:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if sieve is None or sieve.bound < n_max:
        sieve = Sieve(n_max)
    rows = []
    for n in range(1, n_max + 1):
        value = energy_diagonal(n, sieve.summatory)
        oracle = energy_naive(n, n)
        if value != oracle:
            raise CertificationError(f"E_{n}({n}): diagonal {value} != direct sum {oracle}")
        rows.append(TableRow(n, value, PUBLISHED_DIAGONAL.get(n)))
    return rows


def mismatches(rows: list[TableRow]) -> list[TableRow]:
    return [r for r in rows if r.status == "MISMATCH"]

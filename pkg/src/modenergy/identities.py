"""Executable checks of the exact identities satisfied by ``E_m(n)``.

Each ``check_*`` function evaluates one identity at one point and returns an
:class:`IdentityCheck`. The value of ``E`` comes from a pluggable
``evaluator(m, n)`` (the direct sum by default); the other side of every
relation is computed by an independent route, so a broken evaluator shows up
as a failed check with a witness.

Two published claims do not hold and are kept apart as *findings*:

* ``m-prime-congruence``: ``p | n`` does not force ``E_p(n) == 0 (mod p)``
  (``E_3(3) = 1``).
* ``quotient-range``: for ``n > m`` the grouping ``mn - sum_q q*sum K_q``
  needs quotients ``q >= n // m``; summing only ``1 <= q <= n // m`` is wrong
  whenever ``m >= 2``.

Findings never mark a check as failed.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from math import isqrt
from typing import Callable, Iterable

from modenergy.arith import INPUT_MAX, euclid_mod, lcm_upto
from modenergy.energy import (
    energy_block,
    energy_diagonal,
    energy_from_blocks,
    energy_grouped,
    energy_signed,
    quotient_blocks,
)
from modenergy.errors import CapacityError, NotPrime
from modenergy.sieve import Sieve, SpfTable, SummatorySigma, energy_divisor_batch, sigma_bounded

Evaluator = Callable[[int, int], int]

SUITES = (
    "bounds",
    "symmetry",
    "floor-sum",
    "divisor-sum",
    "grouping",
    "diagonal",
    "primality",
    "congruence",
    "recursion",
    "regimes",
    "periodicity",
    "prime-claims",
)
_SIEVE_SUITES = {"divisor-sum", "diagonal", "primality", "recursion", "prime-claims"}


@dataclass
class Finding:
    """A published claim contradicted at ``params``."""

    claim: str
    params: dict
    observed: str
    expected: str


@dataclass
class IdentityCheck:
    identity_id: str
    params: dict
    passed: bool
    witness: dict | None = None
    findings: list[Finding] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"id": self.identity_id, "params": self.params, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class ResidueBlockCount:
    m: int
    n: int
    t: int
    counts: list[int]
    multiples: int


def _make(identity_id: str, params: dict, relations: Iterable[tuple[str, object, object]],
          findings: list[Finding] | None = None) -> IdentityCheck:
    """Build a check from ``(label, lhs, rhs)`` relations; the first mismatch is the witness."""
    for label, lhs, rhs in relations:
        if lhs != rhs:
            witness = {"relation": label, "lhs": str(lhs), "rhs": str(rhs)}
            return IdentityCheck(identity_id, params, False, witness, findings or [])
    return IdentityCheck(identity_id, params, True, None, findings or [])


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def residue_block_counts(m: int, n: int, t: int) -> ResidueBlockCount:
    """Count moduli ``k <= m`` by the class of ``n mod k`` modulo ``t``."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    counts = [0] * t
    for k in range(1, m + 1):
        counts[euclid_mod(n, k) % t] += 1
    return ResidueBlockCount(m, n, t, counts, m // t)


def _floor_sum(m: int, n: int) -> int:
    return sum(k * (n // k) for k in range(1, m + 1))


def _half(m: int) -> int:
    return m * (m - 1) // 2


# -- individual checks -------------------------------------------------------


def check_extremal(m: int, n: int, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    period = lcm_upto(m).value
    e = evaluator(m, n)
    top = _half(m)
    return _make("bounds", {"m": m, "n": n}, [
        ("0 <= E <= m(m-1)/2", 0 <= e <= top, True),
        ("E == 0 iff lcm(1..m) | n", e == 0, n % period == 0),
        ("E == m(m-1)/2 iff n == -1 mod lcm(1..m)", e == top, (n + 1) % period == 0),
    ])


def check_complementary(m: int, n: int, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    return _make("symmetry", {"m": m, "n": n}, [
        ("E(n) + E(-n-1) == m(m-1)/2", evaluator(m, n) + evaluator(m, -n - 1), _half(m)),
    ])


def check_floor_sum(m: int, n: int, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    return _make("floor-sum", {"m": m, "n": n}, [
        ("E == mn - sum k*floor(n/k)", evaluator(m, n), m * n - _floor_sum(m, n)),
    ])


def check_divisor_sum(m: int, n: int, t: SpfTable,
                      evaluator: Evaluator = energy_signed) -> IdentityCheck:
    return _make("divisor-sum", {"m": m, "n": n}, [
        ("E == mn - sum_{d<=n} sigma_{<=m}(d)", evaluator(m, n), energy_divisor_batch(m, n, t)),
    ])


def _block_shape_ok(m: int, n: int, blocks) -> bool:
    lim = min(m, n)
    expect = 1
    for blk in blocks:
        if blk.k_lo != expect or blk.k_hi < blk.k_lo:
            return False
        if n // blk.k_lo != blk.q or n // blk.k_hi != blk.q or blk.q < 1:
            return False
        if blk.k_hi < lim and n // (blk.k_hi + 1) >= blk.q:
            return False
        expect = blk.k_hi + 1
    return expect == lim + 1


def check_grouping(m: int, n: int, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    blocks = quotient_blocks(m, n)
    e = evaluator(m, n)
    return _make("grouping", {"m": m, "n": n}, [
        ("blocks partition [1, min(m,n)] with constant maximal quotients",
         _block_shape_ok(m, n, blocks), True),
        ("#blocks <= 2*ceil(sqrt(n)) + 2", len(blocks) <= 2 * (isqrt(n - 1) + 1 if n else 0) + 2, True),
        ("E == mn - sum_j j * sum K_j", e, energy_from_blocks(m, n, blocks)),
        ("E == grouped kernel", e, energy_grouped(m, n)),
    ])


def check_diagonal(n: int, s: SummatorySigma, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    return _make("diagonal", {"n": n}, [
        ("sum k*floor(n/k) == sum_{d<=n} sigma(d)", _floor_sum(n, n), s.prefix[n]),
        ("E_n(n) == n^2 - S(n)", evaluator(n, n), energy_diagonal(n, s)),
    ])


def is_prime_via_energy(n: int, s: SummatorySigma) -> bool:
    """``n`` is prime iff ``E_n(n) - E_{n-1}(n-1) == n - 2``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return energy_diagonal(n, s) - energy_diagonal(n - 1, s) == n - 2


def check_primality(n: int, s: SummatorySigma, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    e_n, e_prev = evaluator(n, n), evaluator(n - 1, n - 1)
    diff = e_n - e_prev
    prime = is_prime_trial(n)
    return _make("primality", {"n": n}, [
        ("E_n(n) == n^2 - S(n)", e_n, energy_diagonal(n, s)),
        ("E_n(n) - E_{n-1}(n-1) == 2n - 1 - sigma(n)", diff, 2 * n - 1 - s.sigma(n)),
        ("(diff == n - 2) iff prime", diff == n - 2, prime),
        ("(sigma(n) == n + 1) iff prime", s.sigma(n) == n + 1, prime),
        ("is_prime_via_energy == trial division", is_prime_via_energy(n, s), prime),
    ])


def check_congruences(m: int, n: int, t: int, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    rb = residue_block_counts(m, n, t)
    e = evaluator(m, n)
    on_multiples = sum(n % k for k in range(t, m + 1, t))
    off_multiples = sum(n % k for k in range(1, m + 1) if k % t)
    return _make("congruence", {"m": m, "n": n, "t": t}, [
        ("sum_r N_r == m", sum(rb.counts), m),
        ("E == sum_r r*N_r (mod t)", e % t, sum(r * c for r, c in enumerate(rb.counts)) % t),
        ("sum_{t|k} (n mod k) == M_t(m)*n (mod t)", on_multiples % t, rb.multiples * n % t),
        ("E == M_t(m)*n + sum_{t!|k} (n mod k) (mod t)", e % t,
         (rb.multiples * n + off_multiples) % t),
    ])


def check_recursions(m: int, n: int, t: SpfTable, m1: int | None = None,
                     evaluator: Evaluator = energy_signed) -> IdentityCheck:
    t.check(n + 1)
    if m1 is None:
        m1 = m // 2
    e = evaluator(m, n)
    head = evaluator(m1, n) if m1 >= 1 else 0
    tail = sum(n % k for k in range(m1 + 1, m + 1))
    q, r = divmod(n, m)
    e_mm = evaluator(m, m)
    correction = sum(k * ((q * (m % k) + r) // k) for k in range(1, m + 1))
    block = q * e_mm + m * r - correction
    return _make("recursion", {"m": m, "n": n, "m1": m1}, [
        ("E(n+1) - E(n) == m - sigma_{<=m}(n+1)",
         evaluator(m, n + 1) - e, m - sigma_bounded(n + 1, m, t)),
        ("E_m(n) == E_m1(n) + sum_{m1<k<=m} (n mod k)", e, head + tail),
        ("E_m(qm+r) == q E_m(m) + mr - sum k*floor((q b_k + r)/k)", e, block),
        ("block kernel == block formula", energy_block(m, q, r, e_mm), block),
    ])


def check_regimes(m: int, n: int, evaluator: Evaluator = energy_signed) -> IdentityCheck:
    e = evaluator(m, n)
    relations = []
    findings = []
    if n <= m:
        relations.append(("E_m(n) == E_n(n) + (m-n)n", e, evaluator(n, n) + (m - n) * n))
    if n >= m:
        big_q = n // m
        by_q: dict[int, int] = {}
        for k in range(1, m + 1):
            by_q[n // k] = by_q.get(n // k, 0) + k
        relations.append(("floor(n/k) >= n//m for k <= m", min(by_q) >= big_q, True))
        relations.append(("E == mn - sum_{q>=Q} q*sum K_q", e,
                          m * n - sum(q * s for q, s in by_q.items())))
        stated = m * n - sum(q * s for q, s in by_q.items() if 1 <= q <= big_q)
        if n > m and stated != e:
            findings.append(Finding("quotient-range", {"m": m, "n": n}, str(stated), str(e)))
    return _make("regimes", {"m": m, "n": n}, relations, findings)


def check_periodicity(m: int, n: int, m1: int | None = None,
                      evaluator: Evaluator = energy_signed) -> IdentityCheck:
    period = lcm_upto(m).value
    if m1 is None:
        m1 = max(1, m // 2)
    shifted = n + period
    zero_at = (n + 1) * period
    if zero_at > INPUT_MAX:
        raise CapacityError(f"periodicity check needs n up to {zero_at}, beyond 2^63 - 1")
    return _make("periodicity", {"m": m, "n": n, "m1": m1}, [
        ("E(n + L_m) == E(n)", evaluator(m, shifted), evaluator(m, n)),
        ("L_m1 | L_m", period % lcm_upto(m1).value, 0),
        ("E_m1(j*L_m) == 0", evaluator(m1, zero_at), 0),
        ("E_m1(j*L_m - 1) == m1(m1-1)/2", evaluator(m1, zero_at - 1), _half(m1)),
    ])


def check_prime_claims(p: int, other: int, t: SpfTable | None = None,
                       evaluator: Evaluator = energy_signed) -> IdentityCheck:
    """Prime-argument identities at ``n = p`` (with ``m = other``) and at
    ``m = p`` (with ``n = other``); the ``p | n`` congruence is only audited."""
    if not is_prime_trial(p):
        raise NotPrime(f"{p} is not prime")
    m = other
    relations = []
    if m >= p:
        relations.append(("E_m(p) == E_p(p) + (m-p)p", evaluator(m, p), evaluator(p, p) + (m - p) * p))
    else:
        relations.append(("E_m(p) == mp - sum k*floor(p/k)", evaluator(m, p), m * p - _floor_sum(m, p)))
    relations.append(("floor(p/k) == 1 for p/2 < k <= p-1",
                      all(p // k == 1 for k in range(p // 2 + 1, p)), True))
    if t is not None and p <= t.bound:
        relations.append(("sigma(p) == p + 1", sigma_bounded(p, p, t), p + 1))
    n = other
    e_pn = evaluator(p, n)
    relations.append(("E_p(n) == pn - sum k*floor(n/k)", e_pn, p * n - _floor_sum(p, n)))
    findings = []
    if n % p == 0 and e_pn % p != 0:
        findings.append(Finding("m-prime-congruence", {"p": p, "n": n, "E": e_pn},
                                f"E mod p = {e_pn % p}", "0"))
    return _make("prime-claims", {"p": p, "other": other}, relations, findings)


# -- suites ------------------------------------------------------------------


@dataclass
class SuiteConfig:
    suites: tuple[str, ...] = SUITES
    max_m: int = 64
    max_n: int = 64
    max_t: int = 12
    periodicity_max_m: int = 20
    prime_max: int = 50
    prime_multiples: int = 20
    samples: int = 32
    sample_max_m: int = 10**4
    sample_max_n: int = 2**40
    seed: int = 0

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        # canonical order makes reports independent of how suites were listed
        self.suites = tuple(s for s in SUITES if s in self.suites)

    def sieve_bound(self) -> int:
        if not _SIEVE_SUITES.intersection(self.suites):
            return 0
        bound = self.max_n + 1
        if "prime-claims" in self.suites:
            bound = max(bound, self.prime_max)
        return bound


@dataclass
class VerificationReport:
    seed: int
    config: dict
    checks: list[IdentityCheck]

    @property
    def findings(self) -> list[Finding]:
        return [f for c in self.checks for f in c.findings]

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def totals(self) -> dict:
        by_id: dict[str, dict[str, int]] = {}
        for c in self.checks:
            row = by_id.setdefault(c.identity_id, {"passed": 0, "failed": 0})
            row["passed" if c.passed else "failed"] += 1
        by_claim: dict[str, int] = {}
        for f in self.findings:
            by_claim[f.claim] = by_claim.get(f.claim, 0) + 1
        return {
            "checks": len(self.checks),
            "passed": sum(r["passed"] for r in by_id.values()),
            "failed": sum(r["failed"] for r in by_id.values()),
            "findings": sum(by_claim.values()),
            "by_identity": by_id,
            "findings_by_claim": by_claim,
        }

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "findings": [asdict(f) for f in self.findings],
            "totals": self.totals,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _suite_rng(seed: int, suite: str) -> random.Random:
    return random.Random(f"{seed}:{suite}")


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime_trial(p)]


def _run_one(name: str, cfg: SuiteConfig, sieve: Sieve | None, ev: Evaluator) -> list[IdentityCheck]:
    rng = _suite_rng(cfg.seed, name)
    ms = range(1, cfg.max_m + 1)
    ns = range(0, cfg.max_n + 1)
    out: list[IdentityCheck] = []

    def samples(max_m: int, min_n: int = 0):
        for _ in range(cfg.samples):
            yield rng.randint(1, max_m), rng.randint(min_n, cfg.sample_max_n)

    if name == "bounds":
        for m in ms:
            out.extend(check_extremal(m, n, ev) for n in ns)
        for m in range(1, min(cfg.max_m, cfg.periodicity_max_m) + 1):
            period = lcm_upto(m).value
            for j in (1, 2, 3):
                out.append(check_extremal(m, j * period, ev))
                out.append(check_extremal(m, j * period - 1, ev))
        out.extend(check_extremal(rng.randint(1, cfg.periodicity_max_m), n, ev)
                   for _, n in samples(1))
    elif name == "symmetry":
        for m in ms:
            out.extend(check_complementary(m, n, ev) for n in range(-cfg.max_n - 1, cfg.max_n + 1))
        out.extend(check_complementary(m, n, ev) for m, n in samples(cfg.sample_max_m))
    elif name == "floor-sum":
        for m in ms:
            out.extend(check_floor_sum(m, n, ev) for n in ns)
        out.extend(check_floor_sum(m, n, ev) for m, n in samples(cfg.sample_max_m))
    elif name == "divisor-sum":
        for m in ms:
            out.extend(check_divisor_sum(m, n, sieve.spf, ev) for n in ns)
    elif name == "grouping":
        for m in ms:
            out.extend(check_grouping(m, n, ev) for n in ns)
        out.extend(check_grouping(m, n, ev) for m, n in samples(cfg.sample_max_m))
    elif name == "diagonal":
        out.extend(check_diagonal(n, sieve.summatory, ev) for n in range(1, cfg.max_n + 1))
    elif name == "primality":
        out.extend(check_primality(n, sieve.summatory, ev) for n in range(2, cfg.max_n + 1))
    elif name == "congruence":
        for m in ms:
            for n in ns:
                out.extend(check_congruences(m, n, t, ev) for t in range(1, cfg.max_t + 1))
        out.extend(check_congruences(m, n, rng.randint(1, cfg.max_t), ev)
                   for m, n in samples(cfg.sample_max_m))
    elif name == "recursion":
        for m in ms:
            out.extend(check_recursions(m, n, sieve.spf, rng.randint(0, m), ev) for n in ns)
    elif name == "regimes":
        for m in ms:
            out.extend(check_regimes(m, n, ev) for n in range(1, cfg.max_n + 1))
        out.extend(check_regimes(m, n, ev) for m, n in samples(cfg.sample_max_m, min_n=1))
    elif name == "periodicity":
        for m in range(1, min(cfg.max_m, cfg.periodicity_max_m) + 1):
            out.extend(check_periodicity(m, n, rng.randint(1, m), ev) for n in ns)
    elif name == "prime-claims":
        for p in _primes_upto(cfg.prime_max):
            others = set(range(1, cfg.max_m + 1))
            others.update(p * j for j in range(1, cfg.prime_multiples + 1))
            out.extend(check_prime_claims(p, o, sieve.spf, ev) for o in sorted(others))
    return out


def run_suite(config: SuiteConfig, sieve: Sieve | None = None,
              evaluator: Evaluator | None = None) -> VerificationReport:
    """Run the selected suites: an exhaustive small grid plus seeded samples.

    ``evaluator`` replaces the value of ``E`` under test (default: the direct
    sum); it exists so tests can confirm a corrupted evaluator is caught.
    """
    ev = evaluator or energy_signed
    bound = config.sieve_bound()
    if bound and (sieve is None or sieve.bound < bound):
        sieve = Sieve(bound)
    checks: list[IdentityCheck] = []
    for name in config.suites:
        try:
            checks.extend(_run_one(name, config, sieve, ev))
        except CapacityError as exc:
            raise type(exc)(f"suite {name!r}: {exc}") from exc
    return VerificationReport(config.seed, asdict(config), checks)

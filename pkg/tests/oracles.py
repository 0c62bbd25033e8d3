"""Brute-force reference implementations, independent of the package."""
from math import gcd


def energy(m, n):
    return sum(n % k for k in range(1, m + 1))


def divisors(d):
    return [k for k in range(1, d + 1) if d % k == 0]


def sigma(d):
    return sum(divisors(d))


def lcm_upto(m):
    value = 1
    for k in range(1, m + 1):
        value = value * k // gcd(value, k)
    return value


def is_prime(n):
    return n >= 2 and all(n % f for f in range(2, int(n**0.5) + 1))


def smallest_prime_factor(d):
    return next(p for p in range(2, d + 1) if d % p == 0)

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``modenergy._purepy`` call for call.

Accumulators are ``unsigned __int128``; with inputs capped at 2^63 - 1 every
intermediate (m*n, k*floor(n/k) partial sums) stays below 2^127.
"""
from cpython cimport array
from libc.stdint cimport uint64_t, int64_t, uint32_t
import array as pyarray

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

NAME = "compiled"

cdef enum:
    MAX_DIVS = 4096

cdef array.array _u32 = pyarray.array("I")
cdef array.array _u64 = pyarray.array("Q")


cdef object _to_py(u128 x):
    cdef uint64_t hi = <uint64_t>(x >> 64)
    cdef uint64_t lo = <uint64_t>x
    if hi == 0:
        return lo
    return (<object>hi << 64) | <object>lo


def naive_sum(uint64_t m, uint64_t n):
    cdef uint64_t k
    cdef u128 acc = 0
    with nogil:
        for k in range(1, m + 1):
            acc += n % k
    return _to_py(acc)


def naive_sum_signed(uint64_t m, int64_t n):
    cdef uint64_t k
    cdef int64_t r
    cdef u128 acc = 0
    with nogil:
        for k in range(1, m + 1):
            # C truncates toward zero; lift negatives into [0, k-1]
            r = n % <int64_t>k
            if r < 0:
                r = <int64_t>(<uint64_t>r + k)
            acc += <uint64_t>r
    return _to_py(acc)


def grouped_sum(uint64_t m, uint64_t n):
    cdef uint64_t lim = m if m < n else n
    cdef uint64_t k = 1, hi, q, blocks = 0
    cdef u128 total = <u128>m * n
    with nogil:
        while k <= lim:
            q = n // k
            hi = n // q
            if hi > lim:
                hi = lim
            total -= <u128>q * ((<u128>hi * (hi + 1) - <u128>(k - 1) * k) // 2)
            blocks += 1
            k = hi + 1
    return _to_py(total), blocks


def block_correction(uint64_t m, uint64_t q, uint64_t r):
    cdef uint64_t k
    cdef u128 acc = 0
    with nogil:
        for k in range(1, m + 1):
            acc += <u128>k * ((q * (m % k) + r) // k)
    return _to_py(acc)


def build_spf(Py_ssize_t bound):
    cdef array.array out = array.clone(_u32, bound + 1, zero=True)
    cdef uint32_t[::1] spf = out
    cdef Py_ssize_t i, j
    with nogil:
        if bound >= 1:
            spf[1] = 1
        for i in range(2, bound + 1):
            if spf[i] == 0:
                spf[i] = <uint32_t>i
                if i <= bound // i:
                    j = i * i
                    while j <= bound:
                        if spf[j] == 0:
                            spf[j] = <uint32_t>i
                        j += i
    return out


def sigma_prefix(const uint32_t[::1] spf, Py_ssize_t bound):
    cdef array.array out = array.clone(_u64, bound + 1, zero=True)
    cdef uint64_t[::1] prefix = out
    cdef Py_ssize_t d
    cdef uint64_t p, x, pe, s_rest
    with nogil:
        if bound >= 1:
            prefix[1] = 1
        for d in range(2, bound + 1):
            p = spf[d]
            x = d
            pe = 1
            while x % p == 0:
                x //= p
                pe *= p
            s_rest = prefix[x] - prefix[x - 1]
            prefix[d] = prefix[d - 1] + s_rest * ((pe * p - 1) // (p - 1))
    return out


cdef Py_ssize_t _bounded_divisors(const uint32_t[::1] spf, uint64_t d, uint64_t m,
                                  uint64_t* divs) noexcept nogil:
    cdef Py_ssize_t count = 1, base, i
    cdef uint64_t p, pw, v
    cdef int e, j
    divs[0] = 1
    while d > 1:
        p = spf[d]
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        base = count
        pw = 1
        for j in range(e):
            pw *= p
            for i in range(base):
                v = divs[i] * pw
                if v <= m:
                    divs[count] = v
                    count += 1
    return count


def bounded_divisor_sum(const uint32_t[::1] spf, uint64_t d, uint64_t m):
    cdef uint64_t divs[MAX_DIVS]
    cdef Py_ssize_t c, i
    cdef u128 acc = 0
    if m < 1:
        return 0
    c = _bounded_divisors(spf, d, m, divs)
    for i in range(c):
        acc += divs[i]
    return _to_py(acc)


def divisor_batch(const uint32_t[::1] spf, uint64_t m, uint64_t n):
    cdef uint64_t divs[MAX_DIVS]
    cdef uint64_t d, work = 0
    cdef Py_ssize_t c, i
    cdef u128 acc = 0
    with nogil:
        for d in range(1, n + 1):
            c = _bounded_divisors(spf, d, m, divs)
            work += c
            for i in range(c):
                acc += divs[i]
    return _to_py(acc), work


def energy_steps(const uint32_t[::1] spf, uint64_t m, uint64_t n0, uint64_t n1, base):
    cdef uint64_t divs[MAX_DIVS]
    cdef uint64_t n
    cdef Py_ssize_t c, i
    cdef u128 e = (<u128>(base >> 64) << 64) | <uint64_t>(base & 0xFFFFFFFFFFFFFFFF)
    cdef u128 s
    out = [base]
    append = out.append
    for n in range(n0, n1):
        c = _bounded_divisors(spf, n + 1, m, divs)
        s = 0
        for i in range(c):
            s += divs[i]
        e = e + m - s
        append(_to_py(e))
    return out

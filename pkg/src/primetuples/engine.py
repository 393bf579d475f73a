"""Primality testing and odd-only segmented sieving below 2**63."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import DomainOverflowError, RangeTooLargeError

INT_CAP = 1 << 63
DEFAULT_SEGMENT_SLOTS = 1 << 20
MAX_SPAN_FACTOR = 8
# Base primes are sieved up to this bound; survivors above its square get Miller-Rabin.
BASE_PRIME_LIMIT = 1 << 24

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# (bound, witnesses): the witness set is a proof of primality for every n < bound.
_WITNESSES = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)


def check_cap(n: int, what: str = "value") -> None:
    if n >= INT_CAP:
        raise DomainOverflowError(f"{what} {n} is not below 2**63")


def _witnesses(n: int) -> tuple[int, ...]:
    for bound, bases in _WITNESSES:
        if n < bound:
            return bases
    raise DomainOverflowError(f"{n} exceeds the deterministic witness table")


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for every n <= 2**63."""
    n = int(n)
    if n > INT_CAP:
        raise DomainOverflowError(f"{n} is above 2**63")
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 101 * 101:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _witnesses(n):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=8)
def _base_primes_upto(limit: int) -> np.ndarray:
    # odd primes <= limit, plain sieve over odd numbers
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    size = (limit - 1) // 2  # slot j <-> 2j + 3
    flags = np.ones(size, dtype=bool)
    for j in range((isqrt(limit) - 1) // 2):
        if flags[j]:
            p = 2 * j + 3
            flags[(p * p - 3) // 2 :: p] = False
    return 2 * np.flatnonzero(flags).astype(np.int64) + 3


def base_primes(limit: int) -> np.ndarray:
    """Odd primes up to ``limit`` (cached on a power-of-two ceiling)."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    ceiling = 1 << max(limit - 1, 1).bit_length()
    primes = _base_primes_upto(ceiling)
    return primes[: np.searchsorted(primes, limit, side="right")]


def _sieve_odd(first: int, count: int) -> np.ndarray:
    """Primality flags for the odd numbers first, first + 2, ..., first + 2(count - 1)."""
    flags = np.ones(count, dtype=bool)
    if count == 0:
        return flags
    last = first + 2 * (count - 1)
    root = isqrt(last)
    exact = root <= BASE_PRIME_LIMIT
    primes = base_primes(min(root, BASE_PRIME_LIMIT))
    if primes.size:
        p = primes.astype(np.uint64)
        rem = np.uint64(first) % p
        start = np.uint64(first) + (p - rem) % p
        start = np.where(start % np.uint64(2) == 0, start + p, start)
        start = np.maximum(start, p * p)
        idx = ((start - np.uint64(first)) // np.uint64(2)).astype(np.int64)
        n_multi = int(np.searchsorted(primes, count))
        for step, i in zip(primes[:n_multi].tolist(), idx[:n_multi].tolist()):
            if i < count:
                flags[i::step] = False
        single = idx[n_multi:]
        flags[single[single < count]] = False
    if first == 1:
        flags[0] = False
    if not exact:
        # only primes up to BASE_PRIME_LIMIT were removed; confirm the survivors
        for j in np.flatnonzero(flags).tolist():
            if not is_prime(first + 2 * j):
                flags[j] = False
    return flags


def _first_odd(lo: int) -> int:
    return lo | 1


@dataclass(frozen=True, eq=False)
class PrimeSegment:
    """Sieved interval [lo, hi]; one packed bit per odd integer, little-endian bit order."""

    lo: int
    hi: int
    flags: np.ndarray

    @property
    def first_odd(self) -> int:
        return _first_odd(self.lo)

    @property
    def slots(self) -> int:
        return max(0, (self.hi - self.first_odd) // 2 + 1)

    def odd_mask(self) -> np.ndarray:
        return np.unpackbits(self.flags, count=self.slots, bitorder="little").astype(bool)

    def is_prime(self, n: int) -> bool:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"{n} outside segment [{self.lo}, {self.hi}]")
        if n % 2 == 0:
            return n == 2
        j = (n - self.first_odd) // 2
        return bool(self.flags[j >> 3] >> (j & 7) & 1)

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi and self.is_prime(n)

    def odd_primes(self) -> np.ndarray:
        return self.first_odd + 2 * np.flatnonzero(self.odd_mask()).astype(np.int64)

    def primes(self) -> np.ndarray:
        odd = self.odd_primes()
        if self.lo <= 2 <= self.hi:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd

    def __len__(self) -> int:
        return int(self.odd_mask().sum()) + (self.lo <= 2 <= self.hi)


def max_span(segment_slots: int = DEFAULT_SEGMENT_SLOTS) -> int:
    return 2 * segment_slots * MAX_SPAN_FACTOR


def _check_range(lo: int, hi: int) -> None:
    if lo < 0 or lo > hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    check_cap(hi, "upper bound")


def sieve_segment(lo: int, hi: int, segment_slots: int = DEFAULT_SEGMENT_SLOTS) -> PrimeSegment:
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    if hi - lo > max_span(segment_slots):
        raise RangeTooLargeError(
            f"segment width {hi - lo} exceeds maximum {max_span(segment_slots)}"
        )
    first = _first_odd(lo)
    count = max(0, (hi - first) // 2 + 1)
    flags = _sieve_odd(first, count)
    return PrimeSegment(lo, hi, np.packbits(flags, bitorder="little"))


def odd_prime_mask(lo: int, hi: int, segment_slots: int = DEFAULT_SEGMENT_SLOTS) -> np.ndarray:
    """Boolean flags for the odd numbers of [lo, hi], stitched from segments.

    Entry ``j`` refers to ``(lo | 1) + 2 * j``.
    """
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    first = _first_odd(lo)
    count = max(0, (hi - first) // 2 + 1)
    out = np.empty(count, dtype=bool)
    for start in range(0, count, segment_slots):
        n = min(segment_slots, count - start)
        out[start : start + n] = _sieve_odd(first + 2 * start, n)
    return out


def primes_in(lo: int, hi: int, segment_slots: int = DEFAULT_SEGMENT_SLOTS) -> Iterator[int]:
    """Yield every prime in [lo, hi] in increasing order."""
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    if lo <= 2 <= hi:
        yield 2
    first = _first_odd(lo)
    width = 2 * segment_slots
    while first <= hi:
        last = min(hi, first + width - 2)
        count = (last - first) // 2 + 1
        for j in np.flatnonzero(_sieve_odd(first, count)).tolist():
            yield first + 2 * j
        first += width

import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import td_is_prime
from primetuples.engine import (
    INT_CAP,
    is_prime,
    odd_prime_mask,
    primes_in,
    sieve_segment,
)
from primetuples.errors import DomainOverflowError, RangeTooLargeError


@pytest.mark.parametrize(
    "n, expected",
    [(907, True), (1, False), (18313, True), (25, False), (0, False), (2, True), (3, True), (4, False)],
)
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def _td_table(limit):
    # plain trial division, no sieve involved
    table = [False] * (limit + 1)
    for n in range(2, limit + 1):
        if n % 2 == 0:
            table[n] = n == 2
            continue
        f = 3
        while f * f <= n and n % f:
            f += 2
        table[n] = f * f > n
    return table


def test_is_prime_matches_trial_division_below_10_6():
    table = _td_table(10**6)
    assert [n for n in range(10**6 + 1) if is_prime(n) != table[n]] == []
    flags = odd_prime_mask(1, 10**6)
    assert [2 * j + 1 for j in range(flags.size) if flags[j] != table[2 * j + 1]] == []


@pytest.mark.parametrize(
    "n, expected",
    [
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3825123056546413051, False),  # strong pseudoprime to the first nine primes
        (2**61 - 1, True),
        (2**63 - 25, True),  # largest prime below 2**63
        (2**63 - 1, False),
        (2**63, False),
    ],
)
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


def test_is_prime_rejects_above_cap():
    with pytest.raises(DomainOverflowError):
        is_prime(INT_CAP + 1)


def test_sieve_segment_examples():
    assert sieve_segment(3, 30).odd_primes().tolist() == [3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert sieve_segment(3, 3).odd_primes().tolist() == [3]
    assert sieve_segment(24, 28).odd_primes().tolist() == []


def test_segment_queries():
    seg = sieve_segment(0, 50)
    assert seg.primes().tolist()[:4] == [2, 3, 5, 7]
    assert len(seg) == 15
    assert 47 in seg and 49 not in seg and 2 in seg and 1 not in seg
    with pytest.raises(ValueError):
        seg.is_prime(51)


def test_sieve_segment_flags_are_packed_bits():
    seg = sieve_segment(101, 101 + 2 * 799)
    assert seg.flags.dtype == np.uint8
    assert seg.flags.size == 100


def test_sieve_segment_errors():
    with pytest.raises(RangeTooLargeError):
        sieve_segment(3, 10**6, segment_slots=1 << 10)
    with pytest.raises(DomainOverflowError):
        sieve_segment(INT_CAP - 10, INT_CAP)


@pytest.mark.parametrize("lo", [10**9 + 7, 987654321098, 123456789012])
def test_random_segment_below_10_12_matches_is_prime(lo):
    seg = sieve_segment(lo, lo + 10**5)
    got = set(seg.odd_primes().tolist())
    expected = {n for n in range(lo | 1, lo + 10**5 + 1, 2) if is_prime(n)}
    assert got == expected


def test_segment_above_base_prime_limit():
    # beyond (2**24)**2 survivors are confirmed by Miller-Rabin
    lo = INT_CAP - 20001
    seg = sieve_segment(lo, INT_CAP - 1)
    expected = [n for n in range(lo, INT_CAP, 2) if is_prime(n)]
    assert seg.odd_primes().tolist() == expected
    assert expected[-1] == 2**63 - 25


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**15), st.integers(0, 3000))
def test_segment_property(lo, width):
    seg = sieve_segment(lo, lo + width)
    assert seg.odd_primes().tolist() == [n for n in range(lo | 1, lo + width + 1, 2) if is_prime(n)]


@pytest.mark.parametrize(
    "lo, hi, expected",
    [(1, 10, [2, 3, 5, 7]), (89, 97, [89, 97]), (14, 16, []), (2, 2, [2])],
)
def test_primes_in_examples(lo, hi, expected):
    assert list(primes_in(lo, hi)) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 5000), st.sampled_from([4, 64, 1 << 12]))
def test_primes_in_stitches_segments(lo, width, slots):
    got = list(primes_in(lo, lo + width, segment_slots=slots))
    assert got == sorted(set(got))
    assert got == [n for n in range(lo, lo + width + 1) if td_is_prime(n)]


def test_concurrent_segments_match_sequential():
    bounds = [(k * 10**6, k * 10**6 + 50000) for k in range(1, 9)]
    sequential = [sieve_segment(lo, hi).odd_primes().tolist() for lo, hi in bounds]
    results = [None] * len(bounds)

    def work(i):
        results[i] = sieve_segment(*bounds[i]).odd_primes().tolist()

    threads = [threading.Thread(target=work, args=(i,)) for i in range(len(bounds))]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == sequential

"""Independent reference implementations used only by the tests."""

from functools import lru_cache


@lru_cache(maxsize=None)
def td_is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def naive_occurrences(half_gaps, lo, hi):
    """Double loop: every odd base, every element by trial division."""
    offsets = [0]
    for d in half_gaps:
        offsets.append(offsets[-1] + d)
    out = []
    for b in range(max(3, lo) | 1, hi + 1, 2):
        if all(td_is_prime(b + 2 * c) for c in offsets):
            out.append(b)
    return out


def brute_coverage(offsets, q):
    return [{i for i, c in enumerate(offsets) if (r + 2 * c) % q == 0} for r in range(q)]

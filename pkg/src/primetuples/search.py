"""Range scans for instances of a gap signature."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import DEFAULT_SEGMENT_SLOTS, INT_CAP, is_prime, odd_prime_mask
from .errors import ConstraintError, DomainOverflowError, PreconditionError
from .patterns import Admissible, Anchored, PatternStatus, classify_pattern, _sig
from .signature import MAX_K, GapSignature, Multiplet

SEARCH_CAP = 1 << 62


@dataclass(frozen=True)
class SearchJob:
    signature: GapSignature
    lo: int
    hi: int
    parallelism: int = 1
    segment_slots: int = DEFAULT_SEGMENT_SLOTS

    def __post_init__(self):
        object.__setattr__(self, "signature", _sig(self.signature))
        if self.lo > self.hi:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")
        if self.hi > SEARCH_CAP:
            raise DomainOverflowError(f"upper bound {self.hi} exceeds search cap 2**62")
        if self.hi + self.signature.span >= INT_CAP:
            raise DomainOverflowError("last element of the range would exceed 2**63")

    def chunks(self) -> list[tuple[int, int]]:
        # odd base ranges of at most segment_slots candidates each
        first = max(3, self.lo) | 1
        width = 2 * self.segment_slots
        return [(s, min(self.hi, s + width - 2)) for s in range(first, self.hi + 1, width)]


def _scan_chunk(offsets: tuple[int, ...], first: int, last: int, segment_slots: int) -> np.ndarray:
    """Odd bases in [first, last] whose every element is prime."""
    n = (last - first) // 2 + 1
    reach = offsets[-1]
    if reach <= 4 * n:
        mask = odd_prime_mask(first, last + 2 * reach, segment_slots)
        hit = mask[:n].copy()
        for c in offsets[1:]:
            hit &= mask[c : c + n]
            if not hit.any():
                break
    else:
        hit = odd_prime_mask(first, last, segment_slots)
        for c in offsets[1:]:
            if not hit.any():
                break
            hit &= odd_prime_mask(first + 2 * c, last + 2 * c, segment_slots)
    return first + 2 * np.flatnonzero(hit).astype(np.int64)


def _scan_bases(job: SearchJob) -> np.ndarray:
    offsets = job.signature.offsets
    args = [(offsets, s, e, job.segment_slots) for s, e in job.chunks()]
    if not args:
        return np.zeros(0, dtype=np.int64)
    if job.parallelism > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=job.parallelism) as pool:
            parts = list(pool.map(_scan_chunk, *zip(*args)))
    else:
        parts = [_scan_chunk(*a) for a in args]
    return np.concatenate(parts)


def find_occurrences(job: SearchJob) -> list[Multiplet]:
    return [Multiplet(b, job.signature) for b in _scan_bases(job).tolist()]


def find_equal_ap(
    length: int,
    d: int,
    lo: int,
    hi: int,
    parallelism: int = 1,
    segment_slots: int = DEFAULT_SEGMENT_SLOTS,
) -> list[Multiplet]:
    """Prime progressions of ``length`` terms with common difference ``2d`` and base in [lo, hi]."""
    if length < 3:
        raise ValueError(f"length must be >= 3, got {length}")
    if d < 1:
        raise ValueError(f"half-step must be >= 1, got {d}")
    sig = GapSignature((d,) * (length - 1))
    return find_occurrences(SearchJob(sig, lo, hi, parallelism, segment_slots))


@dataclass(frozen=True)
class CountRecord:
    signature: GapSignature
    upto: int
    count: int


def count_occurrences(
    sig: GapSignature | Sequence[int],
    N: int,
    buckets: int = 1,
    parallelism: int = 1,
    segment_slots: int = DEFAULT_SEGMENT_SLOTS,
) -> list[CountRecord]:
    """Cumulative instance counts for bases up to evenly spaced bounds ending at ``N``."""
    sig = _sig(sig)
    if buckets < 1:
        raise ValueError("need at least one bucket")
    bounds = [N * j // buckets for j in range(1, buckets + 1)]
    if N >= 3:
        bases = _scan_bases(SearchJob(sig, 3, N, parallelism, segment_slots))
    else:
        bases = np.zeros(0, dtype=np.int64)
    counts = np.searchsorted(bases, bounds, side="right")
    return [CountRecord(sig, b, int(c)) for b, c in zip(bounds, counts)]


@dataclass(frozen=True)
class VerifyReport:
    status: PatternStatus
    hi: int
    violations: list[Multiplet]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return f"no instance outside the predicted bases up to {self.hi}"
        return (
            f"{len(self.violations)} instance(s) contradict the residue analysis; "
            "this indicates an implementation bug"
        )


def verify_exceptionality(
    sig: GapSignature | Sequence[int],
    hi: int,
    parallelism: int = 1,
    segment_slots: int = DEFAULT_SEGMENT_SLOTS,
) -> VerifyReport:
    sig = _sig(sig)
    status = classify_pattern(sig)
    if isinstance(status, Admissible):
        raise PreconditionError(f"{sig} is admissible; there is nothing to verify")
    allowed = set(status.bases) if isinstance(status, Anchored) else set()
    found = find_occurrences(SearchJob(sig, 3, hi, parallelism, segment_slots))
    return VerifyReport(status, hi, [m for m in found if m.base not in allowed])


def min_anchored_distance(p: int, d_max: int) -> int | None:
    """Smallest ``d <= d_max`` (``3 | d``, ``p ∤ d``) making ``p, p + 2d, ..., p + 2(p-1)d`` all prime."""
    if p < 5 or not is_prime(p):
        raise ConstraintError(f"p must be a prime >= 5, got {p}")
    if p + 2 * (p - 1) * d_max >= SEARCH_CAP:
        raise ConstraintError(f"d_max={d_max} exceeds the search cap")
    for d in range(3, d_max + 1, 3):
        if d % p == 0:
            continue
        sig = GapSignature((d,) * (p - 1))
        # other fully covered primes can rule d out without any primality tests
        if p <= MAX_K and not isinstance(classify_pattern(sig), Anchored):
            continue
        if all(is_prime(e) for e in sig.elements(p)):
            return d
    return None

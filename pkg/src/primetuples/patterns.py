"""Residue-coverage analysis of gap signatures.

For an odd prime ``q`` and a signature with offsets ``c_i``, a base residue
``r`` puts a multiple of ``q`` at every position ``i`` with
``r + 2 c_i = 0 (mod q)``. When every residue class is hit, any all-prime
instance must contain ``q`` itself, which pins the base to finitely many
candidates (an *anchored* pattern) or rules instances out entirely
(*blocked*). Patterns with no fully covered prime are *admissible*.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .engine import is_prime
from .errors import ConstraintError, InvalidSignatureError, PreconditionError
from .signature import MAX_K, GapSignature, Multiplet, as_multiplet


def odd_primes_upto(n: int) -> list[int]:
    return [q for q in range(3, n + 1, 2) if is_prime(q)]


def _sig(sig) -> GapSignature:
    return sig if isinstance(sig, GapSignature) else GapSignature(tuple(sig))


@dataclass(frozen=True)
class CoverageReport:
    q: int
    residue_classes_hit: tuple[frozenset[int], ...]
    """Entry ``r`` lists the positions made divisible by ``q`` when the base is ``r`` mod ``q``."""

    @property
    def full_coverage(self) -> bool:
        return all(self.residue_classes_hit)

    def sole_zero_positions(self) -> list[int]:
        return sorted(next(iter(s)) for s in self.residue_classes_hit if len(s) == 1)


def residue_coverage(sig: GapSignature | Sequence[int], q: int) -> CoverageReport:
    sig = _sig(sig)
    if q < 3 or not is_prime(q):
        raise ValueError(f"q must be an odd prime, got {q}")
    hit = [set() for _ in range(q)]
    for i, c in enumerate(sig.offsets):
        hit[-2 * c % q].add(i)
    return CoverageReport(q, tuple(frozenset(s) for s in hit))


@dataclass(frozen=True)
class Admissible:
    kind = "admissible"


@dataclass(frozen=True)
class Anchored:
    """Every all-prime instance has one of ``bases``.

    ``constraints`` maps each fully covered prime to the positions where it
    sits in the surviving candidates.
    """

    bases: tuple[int, ...]
    constraints: Mapping[int, frozenset[int]] = field(hash=False)
    kind = "anchored"


@dataclass(frozen=True)
class Blocked:
    witness: int
    kind = "blocked"


PatternStatus = Admissible | Anchored | Blocked


def classify_pattern(sig: GapSignature | Sequence[int]) -> PatternStatus:
    sig = _sig(sig)
    if sig.k > MAX_K:
        raise ConstraintError(f"k={sig.k} exceeds the analysis cap of {MAX_K}")
    offsets = sig.offsets
    surviving: set[int] | None = None
    covered = []
    for q in odd_primes_upto(sig.k):
        report = residue_coverage(sig, q)
        if not report.full_coverage:
            continue
        covered.append(q)
        bases = {q - 2 * offsets[i] for i in report.sole_zero_positions()}
        bases = {b for b in bases if b >= 3}
        surviving = bases if surviving is None else surviving & bases
        if not surviving:
            return Blocked(q)
    if surviving is None:
        return Admissible()
    bases = tuple(sorted(surviving))
    constraints = {
        q: frozenset(i for b in bases for i, c in enumerate(offsets) if b + 2 * c == q)
        for q in covered
    }
    return Anchored(bases, constraints)


def exceptional_candidates(sig: GapSignature | Sequence[int]) -> list[Multiplet]:
    sig = _sig(sig)
    status = classify_pattern(sig)
    if not isinstance(status, Anchored):
        return []
    found = (Multiplet(b, sig) for b in status.bases)
    return [m for m in found if m.is_all_prime()]


def equal_distance_signature(p: int, d: int) -> GapSignature:
    """Signature ``[d] * (p - 1)`` of a p-tuple at equal half-gap ``d``; needs ``3 | d`` and ``p ∤ d``."""
    if p < 3 or not is_prime(p):
        raise ConstraintError(f"p must be an odd prime, got {p}")
    if d < 1 or d % 3:
        raise ConstraintError(f"half-gap {d} is not divisible by 3")
    if d % p == 0:
        raise ConstraintError(f"half-gap {d} is divisible by p={p}")
    return GapSignature((d,) * (p - 1))


@dataclass(frozen=True)
class QuartetConfig:
    paper_rule: str
    analyzer: PatternStatus


def quartet_rule(d1: int, d2: int, d3: int) -> str:
    """Which stated congruence condition on the three half-gaps holds, if any."""
    if (d1 - d2) % 3 == 0 and d1 % 3 and d3 % 3 == 0:
        return "induced"
    if (d2 - d3) % 3 == 0 and d2 % 3 and d1 % 3 == 0:
        return "new_A"
    if (d1 - d3) % 3 == 0 and d1 % 3 and d2 % 3 == 0:
        return "new_B"
    return "none"


def quartet_config_status(d1: int, d2: int, d3: int) -> QuartetConfig:
    # the congruence rule and the coverage verdict are reported separately on purpose
    if min(d1, d2, d3) < 1:
        raise InvalidSignatureError("half-gaps must be >= 1")
    return QuartetConfig(quartet_rule(d1, d2, d3), classify_pattern((d1, d2, d3)))


def induced_extension(base: Multiplet | Sequence[int], d_next_max: int) -> list[Multiplet]:
    """Extend a multiplet starting at 3 by one trailing half-gap ``d <= d_next_max``."""
    base = as_multiplet(base)
    if base.base != 3:
        raise PreconditionError(f"induced multiplets start at 3, got {base.base}")
    last = base.elements[-1]
    return [
        Multiplet(3, GapSignature(base.signature.half_gaps + (d,)))
        for d in range(1, d_next_max + 1)
        if is_prime(last + 2 * d)
    ]

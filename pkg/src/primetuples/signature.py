"""Gap signatures and the multiplets that instantiate them.

Gaps are stored as half-gaps: a signature ``(d_1, ..., d_{k-1})`` with base ``b``
has elements ``b + 2 * c_i`` where ``c_i`` are the prefix sums of the half-gaps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Sequence

from .engine import is_prime
from .errors import InvalidMultipletError, InvalidSignatureError

MAX_K = 64


@dataclass(frozen=True)
class GapSignature:
    half_gaps: tuple[int, ...]

    def __post_init__(self):
        gaps = tuple(int(d) for d in self.half_gaps)
        if not gaps:
            raise InvalidSignatureError("a signature needs at least one gap")
        if any(d < 1 for d in gaps):
            raise InvalidSignatureError(f"half-gaps must be >= 1, got {gaps}")
        object.__setattr__(self, "half_gaps", gaps)

    @classmethod
    def of(cls, *half_gaps: int) -> "GapSignature":
        return cls(tuple(half_gaps))

    @classmethod
    def from_full_gaps(cls, gaps: Iterable[int]) -> "GapSignature":
        """Build from full distances ``2 * d_i`` (the form used on the command line)."""
        gaps = [int(g) for g in gaps]
        if any(g % 2 for g in gaps):
            raise InvalidSignatureError(f"full gaps must be even, got {gaps}")
        return cls(tuple(g // 2 for g in gaps))

    @classmethod
    def parse(cls, text: str) -> "GapSignature":
        try:
            gaps = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError:
            raise InvalidSignatureError(f"malformed gap list {text!r}") from None
        return cls.from_full_gaps(gaps)

    @property
    def k(self) -> int:
        return len(self.half_gaps) + 1

    @property
    def offsets(self) -> tuple[int, ...]:
        return (0, *accumulate(self.half_gaps))

    @property
    def span(self) -> int:
        """Distance from the first to the last element."""
        return 2 * self.offsets[-1]

    @property
    def full_gaps(self) -> tuple[int, ...]:
        return tuple(2 * d for d in self.half_gaps)

    def elements(self, base: int) -> tuple[int, ...]:
        return tuple(base + 2 * c for c in self.offsets)

    def __str__(self):
        return "[" + ",".join(map(str, self.full_gaps)) + "]"


@dataclass(frozen=True)
class Multiplet:
    """An instance of a signature. Construction does not test primality; see ``is_all_prime``."""

    base: int
    signature: GapSignature

    @classmethod
    def from_elements(cls, elements: Sequence[int], check: bool = True) -> "Multiplet":
        elements = [int(e) for e in elements]
        if len(elements) < 2:
            raise InvalidMultipletError("a multiplet has at least two elements")
        gaps = [b - a for a, b in zip(elements, elements[1:])]
        if any(g <= 0 or g % 2 for g in gaps):
            raise InvalidMultipletError(f"elements must increase by even steps: {elements}")
        m = cls(elements[0], GapSignature(tuple(g // 2 for g in gaps)))
        if check and not m.is_all_prime():
            raise InvalidMultipletError(f"not all elements are odd primes: {elements}")
        return m

    @property
    def elements(self) -> tuple[int, ...]:
        return self.signature.elements(self.base)

    def is_all_prime(self) -> bool:
        return self.base >= 3 and all(is_prime(e) for e in self.elements)

    def __len__(self):
        return self.signature.k

    def __iter__(self):
        return iter(self.elements)


def as_multiplet(m: Multiplet | Sequence[int]) -> Multiplet:
    if isinstance(m, Multiplet):
        if not m.is_all_prime():
            raise InvalidMultipletError(f"not all elements are odd primes: {m.elements}")
        return m
    return Multiplet.from_elements(m)

"""Classification of generalized twin primes into classes I, II and III.

A generalized twin is a pair of odd primes ``p_lo < p_hi`` at even distance
``2D``. Internally everything is expressed in the half-distance ``D``:

* class I   -- ``D`` odd, median ``2a``
* class II  -- ``D`` even and ``3 ∤ D``, median ``3(2a - 1)``; the pairs
  ``(3, 3 + 2D)`` are *special* and carry no parameter ``a``
* class III -- ``6 | D``, median ``2a + 1``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numba import njit

from .engine import INT_CAP, is_prime, odd_prime_mask
from .errors import InconsistentClassError, InvalidPairError
from .signature import Multiplet, as_multiplet


@dataclass(frozen=True)
class TwinPair:
    p_lo: int
    p_hi: int

    def __post_init__(self):
        lo, hi = int(self.p_lo), int(self.p_hi)
        object.__setattr__(self, "p_lo", lo)
        object.__setattr__(self, "p_hi", hi)
        if lo < 3 or lo >= hi:
            raise InvalidPairError(f"need 3 <= p_lo < p_hi, got ({lo}, {hi})")
        if lo % 2 == 0 or hi % 2 == 0:
            raise InvalidPairError(f"both members must be odd, got ({lo}, {hi})")

    @property
    def D(self) -> int:
        return (self.p_hi - self.p_lo) // 2

    @property
    def distance(self) -> int:
        return self.p_hi - self.p_lo

    @property
    def median(self) -> int:
        return self.p_lo + self.D

    def __iter__(self):
        return iter((self.p_lo, self.p_hi))


@dataclass(frozen=True)
class ClassI:
    a: int
    label = "I"
    special = False


@dataclass(frozen=True)
class ClassII:
    special: bool
    a: int | None = None
    label = "II"


@dataclass(frozen=True)
class ClassIII:
    a: int
    label = "III"
    special = False


TwinClassification = Union[ClassI, ClassII, ClassIII]


def class_label(D: int) -> str:
    """Class determined by the half-distance alone."""
    if D < 1:
        raise InvalidPairError(f"half-distance must be >= 1, got {D}")
    if D % 2:
        return "I"
    return "II" if D % 3 else "III"


def _as_pair(pair) -> TwinPair:
    if isinstance(pair, TwinPair):
        return pair
    lo, hi = pair
    if (int(hi) - int(lo)) % 2:
        raise InvalidPairError(f"distance {int(hi) - int(lo)} is odd")
    return TwinPair(lo, hi)


def classify_twin(pair: TwinPair | Sequence[int]) -> TwinClassification:
    pair = _as_pair(pair)
    if not (is_prime(pair.p_lo) and is_prime(pair.p_hi)):
        raise InvalidPairError(f"({pair.p_lo}, {pair.p_hi}) is not a pair of primes")
    D, median = pair.D, pair.median
    label = class_label(D)
    if label == "I":
        return ClassI(median // 2)
    if label == "III":
        return ClassIII((median - 1) // 2)
    if pair.p_lo == 3:
        return ClassII(special=True)
    return ClassII(special=False, a=(median // 3 + 1) // 2)


def reconstruct_twin(classification: TwinClassification, D: int) -> TwinPair:
    """Inverse of :func:`classify_twin`. Primality of the result is not re-checked."""
    if D < 1:
        raise InconsistentClassError(f"half-distance must be >= 1, got {D}")
    expected = class_label(D)
    if classification.label != expected:
        raise InconsistentClassError(
            f"D={D} belongs to class {expected}, not {classification.label}"
        )
    if classification.special:
        return TwinPair(3, 3 + 2 * D)
    a = classification.a
    if a is None or a < 1:
        raise InconsistentClassError(f"class {classification.label} needs a >= 1, got {a}")
    if expected == "I":
        median = 2 * a
    elif expected == "II":
        median = 3 * (2 * a - 1)
    else:
        median = 2 * a + 1
    if median - D < 3:
        raise InconsistentClassError(f"a={a} gives p_lo={median - D} < 3 at D={D}")
    return TwinPair(median - D, median + D)


def _lo_linear(D: int) -> tuple[int, int]:
    # p_lo = slope * a + intercept for the class of D
    label = class_label(D)
    if label == "I":
        return 2, -D
    if label == "II":
        return 6, -3 - D
    return 2, 1 - D


def enumerate_twin_params(D: int, a_max: int, chunk: int = 1 << 20) -> list[tuple[int, TwinPair]]:
    """All ``a <= a_max`` whose pair at half-distance ``D`` is prime-prime, ascending.

    Special twins have no ``a`` and never appear here.
    """
    slope, intercept = _lo_linear(D)
    if slope * a_max + intercept + 2 * D >= INT_CAP:
        raise InvalidPairError(f"a_max={a_max} pushes the pair past 2**63")
    out = []
    # smallest a with p_lo >= 3
    a_lo = max(1, -((intercept - 3) // slope))
    for start in range(a_lo, a_max + 1, chunk):
        a = np.arange(start, min(start + chunk, a_max + 1), dtype=np.int64)
        lo = slope * a + intercept
        first = int(lo[0])
        mask = odd_prime_mask(first, int(lo[-1]) + 2 * D)
        idx = (lo - first) // 2
        hit = mask[idx] & mask[idx + D]
        out.extend((int(x), TwinPair(int(p), int(p) + 2 * D)) for x, p in zip(a[hit], lo[hit]))
    return out


def list_special_twins(D_max: int) -> list[TwinPair]:
    if D_max < 2:
        return []
    mask = odd_prime_mask(3, 3 + 2 * D_max)
    return [
        TwinPair(3, 3 + 2 * D)
        for D in range(2, D_max + 1, 2)
        if D % 3 and mask[D]
    ]


@dataclass(frozen=True)
class Mod6Form:
    """``p_lo = 6m + residue_lo`` and ``p_hi = 6(m + step) + residue_hi``.

    When a member is 3 the pair sits outside the 6m +- 1 forms and every
    other field is ``None``.
    """

    residue_lo: int | None
    residue_hi: int | None
    m: int | None
    step: int | None
    singlet_exception: bool = False

    def reconstruct(self) -> tuple[int, int]:
        if self.singlet_exception:
            raise ValueError("singlet exceptions have no 6m +- 1 form")
        return 6 * self.m + self.residue_lo, 6 * (self.m + self.step) + self.residue_hi


def _six_form(p: int) -> tuple[int, int]:
    r = p % 6
    if r == 1:
        return 1, (p - 1) // 6
    if r == 5:
        return -1, (p + 1) // 6
    raise ValueError(f"{p} is not of the form 6m +- 1")


def mod6_descriptor(pair: TwinPair | Sequence[int]) -> Mod6Form:
    pair = _as_pair(pair)
    if 3 in (pair.p_lo, pair.p_hi):
        return Mod6Form(None, None, None, None, singlet_exception=True)
    r_lo, m_lo = _six_form(pair.p_lo)
    r_hi, m_hi = _six_form(pair.p_hi)
    return Mod6Form(r_lo, r_hi, m_lo, m_hi - m_lo)


@dataclass(frozen=True)
class ClassSignature:
    labels: tuple[str, ...]

    def __str__(self):
        return "(" + ",".join(self.labels) + ")"


def class_signature(m: Multiplet | Sequence[int]) -> ClassSignature:
    m = as_multiplet(m)
    return ClassSignature(tuple(class_label(d) for d in m.signature.half_gaps))


# -- array forms ------------------------------------------------------------


@njit(cache=True)
def _classify_kernel(p_lo, p_hi, cls, a, special):
    # branch-free: classes alternate unpredictably along a row of pairs
    for i in range(p_lo.size):
        lo = p_lo[i]
        D = (p_hi[i] - lo) >> 1
        median = lo + D
        even = 1 - (D & 1)
        nz3 = D - (D // 3) * 3 != 0
        is2 = even & nz3
        is3 = even & (1 - nz3)
        sp = is2 & (lo == 3)
        half = median >> 1
        cls[i] = 1 + is2 + 2 * is3
        a[i] = (half + is2 * ((median + 3) // 6 - half)) * (1 - sp)
        special[i] = sp


@njit(cache=True)
def _reconstruct_kernel(cls, a, special, D, p_lo, p_hi):
    for i in range(cls.size):
        c = cls[i]
        if special[i]:
            median = 3 + D[i]
        elif c == 1:
            median = 2 * a[i]
        elif c == 2:
            median = 3 * (2 * a[i] - 1)
        else:
            median = 2 * a[i] + 1
        p_lo[i] = median - D[i]
        p_hi[i] = median + D[i]


def _flat(*arrays):
    arrays = np.broadcast_arrays(*(np.asarray(x) for x in arrays))
    return arrays[0].shape, [np.ascontiguousarray(x).ravel() for x in arrays]


def classify_arrays(p_lo, p_hi):
    """Vectorized :func:`classify_twin` for inputs already known to be twins.

    Returns ``(cls, a, special)``: ``cls`` holds 1, 2 or 3 and ``a`` is 0 for
    special twins. Output integers keep the input dtype.
    """
    shape, (lo, hi) = _flat(p_lo, p_hi)
    dt = np.result_type(lo, hi)
    lo, hi = lo.astype(dt, copy=False), hi.astype(dt, copy=False)
    cls = np.empty(lo.size, dtype=np.int8)
    a = np.empty(lo.size, dtype=dt)
    special = np.zeros(lo.size, dtype=bool)
    _classify_kernel(lo, hi, cls, a, special)
    return cls.reshape(shape), a.reshape(shape), special.reshape(shape)


def reconstruct_arrays(cls, a, special, D):
    """Vectorized :func:`reconstruct_twin`; returns ``(p_lo, p_hi)``."""
    shape, (cls, a, special, D) = _flat(cls, a, special, D)
    dt = np.result_type(a, D)
    a, D = a.astype(dt, copy=False), D.astype(dt, copy=False)
    p_lo = np.empty(a.size, dtype=dt)
    p_hi = np.empty(a.size, dtype=dt)
    _reconstruct_kernel(cls, a, special.astype(bool, copy=False), D, p_lo, p_hi)
    return p_lo.reshape(shape), p_hi.reshape(shape)

"""Generalized twin classification and exceptional prime multiplet search."""

from .engine import PrimeSegment, is_prime, primes_in, sieve_segment
from .estimators import TwinClassifier
from .patterns import (
    Admissible,
    Anchored,
    Blocked,
    CoverageReport,
    classify_pattern,
    equal_distance_signature,
    exceptional_candidates,
    induced_extension,
    quartet_config_status,
    residue_coverage,
)
from .search import (
    CountRecord,
    SearchJob,
    count_occurrences,
    find_equal_ap,
    find_occurrences,
    min_anchored_distance,
    verify_exceptionality,
)
from .signature import GapSignature, Multiplet
from .twins import (
    ClassI,
    ClassII,
    ClassIII,
    TwinPair,
    class_signature,
    classify_twin,
    enumerate_twin_params,
    list_special_twins,
    mod6_descriptor,
    reconstruct_twin,
)

__version__ = "0.1.0"

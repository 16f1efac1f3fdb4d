"""Combinatorics of arrangements of double pseudolines.

Encode, validate, canonicalize, mutate, enumerate and axiom-check
arrangements of double pseudolines through their side cycles.
"""

from .arrangement import (
    Arrangement,
    all_c64,
    cyclic_thin,
    from_disk_only,
    parse_text,
    validate,
)
from .flags import FlagComplex, automorphism_order, orbit_count, stabilizer
from .words import SignedPermutation, min_rotation, otimes, roll

__all__ = [
    "Arrangement",
    "FlagComplex",
    "SignedPermutation",
    "all_c64",
    "automorphism_order",
    "cyclic_thin",
    "from_disk_only",
    "min_rotation",
    "orbit_count",
    "otimes",
    "parse_text",
    "roll",
    "stabilizer",
    "validate",
]

__version__ = "0.1.0"

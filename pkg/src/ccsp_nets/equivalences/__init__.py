"""Equivalence checkers on nets; each returns a three-valued :class:`Verdict`."""

from .causal import caus_check_bounded
from .games import fcb_check_bounded, sp_check_process_based
from .relations import NotSafe, pb_check, strong_check
from .sp import SpCertificate, SpRefutation, sp_check, validate_sp_bisimulation
from .verdict import NO, UNKNOWN, YES, Verdict

__all__ = [
    "NO",
    "UNKNOWN",
    "YES",
    "NotSafe",
    "SpCertificate",
    "SpRefutation",
    "Verdict",
    "caus_check_bounded",
    "fcb_check_bounded",
    "pb_check",
    "sp_check",
    "sp_check_process_based",
    "strong_check",
    "validate_sp_bisimulation",
]

"""Entropic quantities and distance measures."""

from .entropy import (EntropyCache, EntropyReport, KINDS, check_trip_identity,
                      coherent_information, conditional_entropy,
                      conditional_mutual_information, entropy, mutual_information,
                      report_for_groups, subsystem_entropy, von_neumann)
from .distance import (DistanceReport, aligned_extension, distance_report, fannes_bound,
                       fidelity, helstrom_probability, op_distance,
                       projective_search_probability, trace_distance, trace_norm,
                       uhlmann_search)
from .suite import CheckOutcome, SuiteReport, run_identity_suite

__all__ = [
    "EntropyCache", "EntropyReport", "KINDS", "check_trip_identity", "coherent_information",
    "conditional_entropy", "conditional_mutual_information", "entropy",
    "mutual_information", "report_for_groups", "subsystem_entropy", "von_neumann",
    "DistanceReport", "aligned_extension", "distance_report", "fannes_bound", "fidelity",
    "helstrom_probability", "op_distance", "projective_search_probability",
    "trace_distance", "trace_norm", "uhlmann_search", "CheckOutcome", "SuiteReport",
    "run_identity_suite",
]

"""Axiom database, inference rules and a replaying proof checker."""

from .axioms import Axiom, axiom_db, lookup
from .builtins import builtin, builtin_derivations
from .mutate import fuzz, mutate
from .proof import (CheckResult, DerivationStep, Proof, ProofBuilder, check_proof,
                    check_proof_json, format_proof_tree, proof_from_dict, proof_from_json)
from .rules import RULES, apply_rule
from .sanity import SanityReport, bind_proof, concrete_state, numeric_replay

__all__ = [
    "Axiom", "axiom_db", "lookup", "builtin", "builtin_derivations", "fuzz", "mutate",
    "CheckResult", "DerivationStep", "Proof", "ProofBuilder", "check_proof",
    "check_proof_json", "format_proof_tree", "proof_from_dict", "proof_from_json", "RULES", "apply_rule",
    "SanityReport", "bind_proof", "concrete_state", "numeric_replay",
]

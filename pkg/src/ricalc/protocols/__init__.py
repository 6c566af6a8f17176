"""Exact simulation of the finite unit protocols and of twirl-based
absolutization, with per-party ownership and resource ledgers."""

from .absolutize import (KEY_A, KEY_B, KINDS, TwirlResult, check_decoupling, intertwiner,
                         intertwining_error, product_residual, run_absolutize)
from .lab import ALICE, BOB, ENV, REF, Lab, controlled_unitary, copy_isometry, dephasing_channel
from .units import (UNIT_AXIOMS, SimResult, coherent_round_trip, coherent_sd, coherent_tp,
                    dense_code, distribute, run_unit, teleport)

__all__ = [
    "ALICE", "BOB", "ENV", "REF", "KEY_A", "KEY_B", "KINDS", "UNIT_AXIOMS",
    "Lab", "SimResult", "TwirlResult",
    "check_decoupling", "coherent_round_trip", "coherent_sd", "coherent_tp",
    "controlled_unitary", "copy_isometry", "dense_code", "dephasing_channel", "distribute",
    "intertwiner", "intertwining_error", "product_residual", "run_absolutize", "run_unit",
    "teleport",
]

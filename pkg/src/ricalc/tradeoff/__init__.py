"""Single-letter trade-off regions for the family of resource inequalities."""

from .bijections import (BijectionReport, check_bijections, f_inverse, f_map, g_inverse, g_map,
                         partner_curves, shared_sample)
from .estimator import TradeoffEstimator
from .geometry import (FatherCrossing, father_intersection, square_witness,
                       tensor_power_violation)
from .optimize import (CurvePoint, TradeoffCurve, curve_from_witnesses, optimize_boundary,
                       refine)
from .regions import FAMILIES, Evaluator, Family, PointValue, eval_point, get_family, sigma_state
from .witness import (WITNESS_KINDS, SigmaWitness, canonical_witnesses, random_witness)

__all__ = [
    "BijectionReport", "check_bijections", "f_map", "f_inverse", "g_map", "g_inverse",
    "partner_curves", "shared_sample", "TradeoffEstimator", "FatherCrossing",
    "father_intersection", "square_witness", "tensor_power_violation", "CurvePoint",
    "TradeoffCurve", "curve_from_witnesses", "optimize_boundary", "refine", "FAMILIES",
    "Evaluator", "Family", "PointValue", "eval_point", "get_family", "sigma_state",
    "WITNESS_KINDS", "SigmaWitness", "canonical_witnesses", "random_witness",
]

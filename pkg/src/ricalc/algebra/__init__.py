"""Symbolic resource expressions with exact entropic coefficients."""

from .atoms import EntropicAtom, atom, split_labels
from .basis import EMPTY_BASIS, Fact, IdentityBasis, StateContext
from .certify import is_negative, is_nonneg, is_nonpos, is_positive
from .coefficient import ONE, ZERO, Coefficient
from .evaluate import evaluate, evaluate_coefficient
from .expr import (CBIT, COBIT, EBIT, QUBIT, RBIT, ResourceExpr, ResourceInequality,
                   ResourceSymbol, add, expr_equal, expr_leq, negative_normal_form,
                   normalize, ri_equal, scale, scale_ri, unit)
from .grammar import (GRAMMAR_HELP, format_expr, format_ri, parse_coefficient, parse_expr,
                      parse_fact, parse_ri, parse_symbol)

__all__ = [
    "EntropicAtom", "atom", "split_labels", "EMPTY_BASIS", "Fact", "IdentityBasis",
    "StateContext", "is_negative", "is_nonneg", "is_nonpos", "is_positive", "ONE", "ZERO",
    "Coefficient", "evaluate", "evaluate_coefficient", "CBIT", "COBIT", "EBIT", "QUBIT",
    "RBIT", "ResourceExpr", "ResourceInequality", "ResourceSymbol", "add", "expr_equal",
    "expr_leq", "negative_normal_form", "normalize", "ri_equal", "scale", "scale_ri", "unit",
    "GRAMMAR_HELP", "format_expr", "format_ri", "parse_coefficient", "parse_expr",
    "parse_fact", "parse_ri", "parse_symbol",
]

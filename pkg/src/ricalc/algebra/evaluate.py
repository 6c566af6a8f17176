"""Numeric evaluation of symbolic coefficients against bound states."""

from __future__ import annotations

from ..errors import UnboundTag
from ..info.entropy import EntropyCache, quantity_from_entropies
from .coefficient import Coefficient
from .expr import ResourceExpr


class _Evaluator:
    def __init__(self, bindings: dict):
        self.bindings = bindings
        self.caches = {}

    def atom(self, a) -> float:
        if a.tag not in self.bindings:
            raise UnboundTag(f"state tag {a.tag!r} is not bound")
        if a.tag not in self.caches:
            self.caches[a.tag] = EntropyCache(self.bindings[a.tag])
        state = self.bindings[a.tag]
        state.layout.check_labels(a.labels)
        return quantity_from_entropies(a.kind, a.groups, self.caches[a.tag])


def evaluate_coefficient(c: Coefficient, bindings: dict) -> float:
    return Coefficient.of(c).evaluate(_Evaluator(bindings).atom)


def evaluate(e: ResourceExpr, bindings: dict) -> dict:
    """Map every finite term's symbol (as text) to its numeric coefficient.

    o-terms evaluate to 0.0 and infinite terms to ``inf``.
    """
    ev = _Evaluator(bindings)
    out = {str(s): c.evaluate(ev.atom) for s, c in e.terms}
    for s in e.o_terms:
        out[f"o{s}"] = 0.0
    for s in e.inf_terms:
        out[f"inf{s}"] = float("inf")
    return out

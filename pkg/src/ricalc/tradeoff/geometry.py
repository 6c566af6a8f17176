"""Endpoint geometry of the father region and a tensor-power sanity check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidWitness
from ..quantum.layout import SystemLayout
from ..quantum.objects import StateSpec
from ..quantum.ops import permute, tensor
from .regions import Evaluator, as_static, eval_point, get_family
from .witness import SigmaWitness, canonical_witnesses


@dataclass(frozen=True)
class FatherCrossing:
    """Where the bounds Q <= E + I(A>B) and Q <= I(A;B)/2 meet for one input."""

    coherent_info: float
    half_mutual_info: float
    crossing: float  # E at which the bounds meet
    half_ae: float  # I(A;E)/2

    @property
    def discrepancy(self) -> float:
        return abs(self.crossing - self.half_ae)


def father_intersection(channel, witness: SigmaWitness | None = None) -> FatherCrossing:
    """Crossing point of the two father bounds (default input: maximally entangled)."""
    fam = get_family("FATHER")
    if witness is None:
        d = channel.in_layout.total
        witness = canonical_witnesses("input", d, d)[0]
    pv = eval_point(fam, witness, channel)
    return FatherCrossing(pv.constraint, pv.objective, pv.objective - pv.constraint,
                          pv.extras["I(A;E)"] / 2)


def _square_state(rho: StateSpec) -> StateSpec:
    """rho (x) rho regrouped as a bipartite state on A = A1A2, B = B1B2."""
    rho = as_static(rho)
    d_a, d_b = rho.dims
    two = tensor(rho.relabel({"A": "A1", "B": "B1"}), rho.relabel({"A": "A2", "B": "B2"}))
    two = permute(two, ["A1", "A2", "B1", "B2"])
    return StateSpec(SystemLayout(("A", "B"), (d_a * d_a, d_b * d_b)), two.matrix)


def square_witness(w: SigmaWitness) -> SigmaWitness:
    """The product witness w (x) w for the squared state.

    Outcomes are pairs (x, y) and each operator A1A2 -> A'1E'1A'2E'2 is
    reordered to A'1A'2E'1E'2 so the output splits as A' (x) E'.
    """
    if w.kind not in ("ensemble", "instrument"):
        raise InvalidWitness("only static witnesses have a squared form")
    nx, _, d = w.ops.shape
    dp, dq = w.dims
    ops = np.einsum("xij,ykl->xyikjl", w.ops, w.ops).reshape(nx * nx, -1, d * d)
    ops = ops.reshape(nx * nx, dp, dq, dp, dq, d * d).transpose(0, 1, 3, 2, 4, 5)
    ops = ops.reshape(nx * nx, dp * dp * dq * dq, d * d)
    probs = None if w.probs is None else np.outer(w.probs, w.probs).ravel()
    return SigmaWitness(w.kind, ops, probs, (dp * dp, dq * dq))


def tensor_power_violation(family, rho: StateSpec, witnesses) -> float:
    """Worst amount by which an n=1 corner leaves half the n=2 region.

    For each witness w the corner (c, value) of the single-copy region is
    compared with the point certified by w (x) w on rho (x) rho, with both
    rates divided by two. Product witnesses make the constraint and the
    objective additive, so the result is rounding-level.
    """
    fam = get_family(family) if isinstance(family, str) else family
    one, two = Evaluator(fam, rho), Evaluator(fam, _square_state(rho))
    worst = 0.0
    for w in witnesses:
        p1, p2 = one(w), two(square_witness(w))
        b = max(0.0, p1.constraint)
        v1 = fam.value(b, p1.constraint, p1.objective)
        # half the n=2 region at budget b is half its value at budget 2b
        v2 = fam.value(2 * b, p2.constraint, p2.objective) / 2
        excess = p2.constraint / 2 - b
        worst = max(worst, excess, v1 - v2)
    return float(worst)

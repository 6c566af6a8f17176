"""Inner-bound trade-off curves by random restarts and coordinate search.

For each budget on the grid, each restart draws a witness (the first
restarts are the canonical protocol witnesses), then improves it by
signed steps along random directions, one coordinate block at a time,
with a step per block that halves whenever a move gains less than a
relative 1e-7. The
merit is lexicographic: feasible beats infeasible, less violation beats
more, then the region value.

Every final witness joins a pool; the curve value at a budget is the
best value certified at that budget by any pooled witness, after
re-evaluating it on the explicit sigma state. This makes curves
monotone in the budget and never relies on the optimizer's own numbers.
"""

from __future__ import annotations

import base64
import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidWitness
from .regions import Evaluator, Family, PointValue, eval_point, get_family
from .witness import (SigmaWitness, canonical_witnesses, move, n_blocks, random_direction,
                      random_witness)

FEAS_TOL = 1e-9
REL_IMPROVEMENT = 1e-7
MAX_ITER = 2000
MIN_STEP = 1e-3


@dataclass
class CurvePoint:
    budget: float
    value: float
    witness: SigmaWitness | None
    point: PointValue | None = None
    restart: int = -1

    def blob(self, family: str, seed: int) -> str:
        """Base64 JSON describing the witness (and the seed that produced it)."""
        d = {"family": family, "seed": seed, "restart": self.restart}
        if self.witness is not None:
            d["constraint"] = self.point.constraint
            d["objective"] = self.point.objective
            d["witness"] = self.witness.to_json()
        raw = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return base64.b64encode(raw.encode()).decode()


@dataclass
class TradeoffCurve:
    """Best certified value per budget, plus the witness pool behind it."""

    family: str
    axes: tuple
    points: list
    restarts: int
    seed: int
    object_key: str
    pool: list = field(default_factory=list)  # (witness, PointValue, restart)

    @property
    def budgets(self) -> np.ndarray:
        return np.array([p.budget for p in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.points])

    def value_at(self, budget: float, tol: float = FEAS_TOL) -> float:
        """Best value any pooled witness certifies at ``budget``."""
        fam = get_family(self.family)
        best = 0.0
        for _, pv, _ in self.pool:
            if fam.feasible(budget, pv.constraint, tol):
                best = max(best, fam.value(budget, pv.constraint, pv.objective))
        return best

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["budget", "value", "witness"])
        for p in self.points:
            w.writerow([repr(float(p.budget)), repr(float(p.value)),
                        p.blob(self.family, self.seed)])
        return out.getvalue()

    def metadata(self) -> dict:
        return {"family": self.family, "axes": list(self.axes), "restarts": self.restarts,
                "seed": self.seed, "object": self.object_key, "grid": len(self.points)}


def _merit(fam: Family, budget: float, pv: PointValue) -> float:
    if fam.feasible(budget, pv.constraint):
        return fam.value(budget, pv.constraint, pv.objective)
    return -1e3 - (pv.constraint - budget)


def refine(fam: Family, ev: Evaluator, w: SigmaWitness, budget: float, rng, *,
           max_iter: int = MAX_ITER, min_step: float = MIN_STEP,
           step: float = 0.5) -> tuple[SigmaWitness, PointValue]:
    """Coordinate search from ``w`` maximizing the merit at ``budget``.

    Each block keeps its own step: it doubles (up to ``step``) after a
    move that gains more than a relative 1e-7 and halves otherwise. The
    search ends when every block step is below ``min_step`` or after
    ``max_iter`` evaluations.
    """
    pv = ev(w)
    m = _merit(fam, budget, pv)
    steps = np.full(n_blocks(w), step)
    it = 0
    while it < max_iter and steps.max() >= min_step:
        for block in range(len(steps)):
            if steps[block] < min_step:
                continue
            d = random_direction(w, block, rng)
            gained = False
            for sign in (1.0, -1.0):
                cand = move(w, block, sign * steps[block], d)
                it += 1
                if cand is None:
                    continue
                cpv = ev(cand)
                cm = _merit(fam, budget, cpv)
                if cm - m > REL_IMPROVEMENT * max(1.0, abs(m)):
                    w, pv, m = cand, cpv, cm
                    gained = True
                    break
            steps[block] = min(2 * steps[block], step) if gained else steps[block] / 2
    return w, pv


def _dims(fam: Family, ev: Evaluator) -> tuple[int, int | None]:
    return (ev.d, None) if fam.static else (ev.d, ev.d)


def optimize_boundary(family, obj, grid: int = 17, restarts: int = 64, seed: int = 0, *,
                      budgets=None, x_max: int = 4, max_iter: int = MAX_ITER,
                      min_step: float = MIN_STEP) -> TradeoffCurve:
    """Trade-off curve of ``family`` on ``obj`` (a state or a channel).

    ``budgets`` defaults to ``grid`` evenly spaced points from 0 to the
    largest budget the constraint can reach. The result is an inner bound
    on the single-letter region; global optimality is not claimed.
    """
    fam = get_family(family) if isinstance(family, str) else family
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    ev = Evaluator(fam, obj)
    d_a, d_in = _dims(fam, ev)
    if budgets is None:
        budgets = np.linspace(0.0, fam.budget_max(ev.d), grid)
    budgets = [float(b) for b in budgets]
    starts = canonical_witnesses(fam.witness_kind, d_a, d_in)

    found = []  # (witness, restart)
    for k, b in enumerate(budgets):
        for r in range(restarts):
            rng = np.random.default_rng([seed, k, r])
            if r < len(starts):
                w0 = starts[r]
            else:
                w0 = random_witness(fam.witness_kind, d_a, rng, x_max, d_in)
            w, _ = refine(fam, ev, w0, b, rng, max_iter=max_iter, min_step=min_step)
            found.append((w, r))
    return curve_from_witnesses(fam, obj, found, budgets, restarts=restarts, seed=seed,
                                _evaluator=ev)


def curve_from_witnesses(family, obj, witnesses, budgets, *, restarts: int = 0,
                         seed: int = 0, _evaluator=None) -> TradeoffCurve:
    """Curve certified by a given witness list (items may be ``(witness, restart)``).

    Each witness is re-evaluated on the explicit sigma state; witnesses
    that fail validation are rejected.
    """
    fam = get_family(family) if isinstance(family, str) else family
    ev = _evaluator or Evaluator(fam, obj)
    pool = []
    seen = set()
    for item in witnesses:
        w, r = item if isinstance(item, tuple) else (item, -1)
        try:
            w = _renormalize(w).validate()
        except InvalidWitness:
            continue
        key = json.dumps(w.to_json(), sort_keys=True)
        if key in seen:
            continue
        seen.add(key)
        pool.append((w, eval_point(fam, w, obj), r))
    points = []
    for b in budgets:
        best = CurvePoint(float(b), 0.0, None)
        for w, pv, r in pool:
            if fam.feasible(b, pv.constraint, FEAS_TOL):
                v = fam.value(b, pv.constraint, pv.objective)
                if v > best.value:
                    best = CurvePoint(float(b), v, w, pv, r)
        points.append(best)
    return TradeoffCurve(fam.name, fam.axes, points, restarts, seed, ev.key, pool)


def _renormalize(w: SigmaWitness) -> SigmaWitness:
    """Remove rounding drift accumulated by many small unitary moves."""
    if w.kind == "ensemble":
        ops = np.stack([_polar(v) for v in w.ops])
    elif w.kind == "instrument":
        nx, k, d = w.ops.shape
        ops = _polar(w.ops.reshape(nx * k, d)).reshape(nx, k, d)
    elif w.kind == "input":
        ops = w.ops / np.linalg.norm(w.ops)
    else:
        ops = w.ops / np.linalg.norm(w.ops.reshape(len(w.ops), -1), axis=1)[:, None, None]
    probs = None
    if w.probs is not None:
        probs = np.clip(w.probs, 0, None)
        probs = probs / probs.sum()
    return SigmaWitness(w.kind, ops, probs, w.dims)


def _polar(v: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(v, full_matrices=False)
    return u @ vh

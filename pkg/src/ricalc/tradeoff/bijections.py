"""Linear maps between partner regions and their pointwise verification.

Two invertible maps relate the static regions:

    f(Q, E) = (Q + E, 2E)   from MOTHER (Q, E) to NSD (Q, R)
    g(R, E) = (R + 2E, E)   from ED (R, E) to NTP (R, Q)

For one witness the corner of each region is (c(sigma), value at c(sigma)).
Because every branch of sigma is pure, f sends the mother corner exactly
onto the NSD corner of the same witness and g sends the ED corner onto
the NTP corner. Applying g to NTP corners instead lands strictly inside
the ED region, with slack 4 I(A'>BX).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import IncompatibleCurves
from .optimize import TradeoffCurve, curve_from_witnesses
from .regions import get_family
from .witness import SigmaWitness, canonical_witnesses, random_witness


def f_map(q: float, e: float) -> tuple[float, float]:
    return q + e, 2 * e


def f_inverse(q: float, r: float) -> tuple[float, float]:
    return q - r / 2, r / 2


def g_map(r: float, e: float) -> tuple[float, float]:
    return r + 2 * e, e


def g_inverse(r: float, q: float) -> tuple[float, float]:
    return r - 2 * q, q


TRANSFORMS = {"f": f_map, "f_inv": f_inverse, "g": g_map, "g_inv": g_inverse}

# (source family, partner family) -> transforms that may be checked
_PAIRS = {
    ("MOTHER", "NSD"): ("f",),
    ("NSD", "MOTHER"): ("f_inv",),
    ("ED", "NTP"): ("g",),
    ("NTP", "ED"): ("g_inv", "g"),
}


@dataclass
class BijectionReport:
    """Outcome of mapping every pooled corner of one curve into its partner."""

    source: str
    target: str
    transform: str
    n_points: int
    worst_violation: float  # how far a mapped point sits outside the partner region
    worst_gap: float  # distance from a mapped corner to the partner corner of the same witness
    violations: list = field(default_factory=list, repr=False)

    def ok(self, tol: float = 1e-6) -> bool:
        return self.worst_violation < tol


def _corner(curve: TradeoffCurve, pv, clip: bool = True) -> tuple[float, float]:
    """Corner (c, value at c) of one witness; unclipped values may be negative."""
    fam = get_family(curve.family)
    if not clip:
        return pv.constraint, pv.constraint * fam.linear + pv.objective
    b = max(0.0, pv.constraint)
    return b, fam.value(b, pv.constraint, pv.objective)


def check_bijections(curve_a: TradeoffCurve, curve_b: TradeoffCurve,
                     transform: str | None = None) -> BijectionReport:
    """Map each pooled corner of ``curve_a`` into the region of ``curve_b``.

    The partner region at a budget is the best value any witness pooled in
    ``curve_b`` certifies there (0 if none), so ``curve_b`` should be
    built from the same witness sample. ``transform`` defaults to the map
    that carries corners onto corners (f, f_inv, g or g_inv).
    """
    pair = (curve_a.family, curve_b.family)
    if pair not in _PAIRS:
        raise IncompatibleCurves(f"no bijection relates {pair[0]} to {pair[1]}")
    if curve_a.object_key != curve_b.object_key:
        raise IncompatibleCurves("curves were computed on different noisy objects")
    transform = transform or _PAIRS[pair][0]
    if transform not in _PAIRS[pair]:
        raise IncompatibleCurves(f"transform {transform!r} does not map {pair[0]} to {pair[1]}")
    fn = TRANSFORMS[transform]
    partner = {_key(w): pv for w, pv, _ in curve_b.pool}

    worst_v, worst_g, viols = 0.0, 0.0, []
    for w, pv, _ in curve_a.pool:
        b, v = fn(*_corner(curve_a, pv))
        viol = max(0.0, v - curve_b.value_at(b), -b)
        viols.append(viol)
        worst_v = max(worst_v, viol)
        same = partner.get(_key(w))
        if same is not None:
            b, v = fn(*_corner(curve_a, pv, clip=False))
            cb, cv = _corner(curve_b, same, clip=False)
            worst_g = max(worst_g, float(np.hypot(b - cb, v - cv)))
    return BijectionReport(curve_a.family, curve_b.family, transform, len(curve_a.pool),
                           worst_v, worst_g, viols)


def _key(w: SigmaWitness) -> bytes:
    return w.ops.tobytes() + (w.probs.tobytes() if w.probs is not None else b"")


def shared_sample(kind: str, d_a: int, n: int = 33, seed: int = 0,
                  x_max: int = 4) -> list[SigmaWitness]:
    """Canonical witnesses followed by seeded random ones, ``n`` in total."""
    out = canonical_witnesses(kind, d_a)[:n]
    rng = np.random.default_rng(seed)
    while len(out) < n:
        out.append(random_witness(kind, d_a, rng, x_max))
    return out


def partner_curves(rho, pair: tuple[str, str], n: int = 33, seed: int = 0,
                   budgets=None) -> tuple[TradeoffCurve, TradeoffCurve]:
    """Curves of both families of ``pair`` certified by one shared witness sample."""
    fa, fb = (get_family(p) for p in pair)
    if fa.witness_kind != fb.witness_kind:
        raise IncompatibleCurves(f"{fa.name} and {fb.name} use different witnesses")
    d_a = rho.layout.dim(rho.labels[0])
    sample = shared_sample(fa.witness_kind, d_a, n, seed)
    if budgets is None:
        budgets = np.linspace(0.0, max(fa.budget_max(d_a), fb.budget_max(d_a)), n)
    return (curve_from_witnesses(fa, rho, sample, budgets, seed=seed),
            curve_from_witnesses(fb, rho, sample, budgets, seed=seed))

"""Seeded invariant suite over random states (the ``qi identities`` command)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..quantum.layout import SystemLayout
from ..quantum.objects import StateSpec
from ..quantum.random import random_density, random_pure_state
from .distance import distance_report, fannes_bound, trace_norm
from .entropy import (check_trip_identity, coherent_information,
                      conditional_mutual_information, mutual_information, subsystem_entropy)

TOL = 1e-9
DIMS = ((2, 2, 2), (2, 3, 2))
FANNES_EPS = 0.1


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    worst: float  # largest residual (or violation) seen
    tol: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.worst < self.tol

    def to_dict(self) -> dict:
        return {"name": self.name, "worst": self.worst, "tol": self.tol,
                "samples": self.samples, "passed": self.passed}


@dataclass
class SuiteReport:
    seed: int
    samples: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "samples": self.samples, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}


def _layout(dims) -> SystemLayout:
    return SystemLayout(("A", "B", "E"), dims)


def _nearby(rho: StateSpec, eps: float, rng) -> StateSpec:
    """A state at trace distance exactly ``eps`` from ``rho`` (a mixture with a random state)."""
    omega = random_density(rho.layout, rng)
    t = eps / trace_norm(rho.matrix - omega.matrix)
    return StateSpec(rho.layout, (1 - t) * rho.matrix + t * omega.matrix)


def run_identity_suite(samples: int = 200, seed: int = 0, tol: float = TOL) -> SuiteReport:
    """Check the entropy identities and distance inequalities on random states.

    Each sample draws a mixed and a pure tripartite state, alternating the
    dimensions 2x2x2 and 2x3x2, plus a pair of nearby two-qubit states for
    the continuity bound. Worst residuals are reported per check.
    """
    rng = np.random.default_rng(seed)
    # identities record |residual|, inequalities their violation (0 when satisfied)
    worst = {k: 0.0 for k in ("trip-identity", "cmi-nonneg", "pure-duality-sum",
                              "pure-duality-diff", "fvdg-sandwich", "fvdg-pure-equality",
                              "fannes-bound")}
    for i in range(samples):
        lay = _layout(DIMS[i % len(DIMS)])
        rho = random_density(lay, rng)
        worst["trip-identity"] = max(worst["trip-identity"],
                                     check_trip_identity(rho, ["E"], ["A"], ["B"]))
        cmi = conditional_mutual_information(rho, ["A"], ["B"], ["E"])
        worst["cmi-nonneg"] = max(worst["cmi-nonneg"], -cmi)

        psi = random_pure_state(lay, rng)
        iab = mutual_information(psi, ["A"], ["B"])
        iae = mutual_information(psi, ["A"], ["E"])
        worst["pure-duality-sum"] = max(worst["pure-duality-sum"],
                                        abs((iab + iae) / 2 - subsystem_entropy(psi, ["A"])))
        worst["pure-duality-diff"] = max(worst["pure-duality-diff"],
                                         abs((iab - iae) / 2
                                             - coherent_information(psi, ["A"], ["B"])))

        lo, mid, hi = distance_report(rho, random_density(lay, rng)).fuchs_van_de_graaf()
        worst["fvdg-sandwich"] = max(worst["fvdg-sandwich"], lo - mid, mid - hi)
        _, mid, hi = distance_report(psi, random_pure_state(lay, rng)).fuchs_van_de_graaf()
        worst["fvdg-pure-equality"] = max(worst["fvdg-pure-equality"], abs(hi - mid))

        pair = SystemLayout(("A", "B"), (2, 2))
        r = random_density(pair, rng)
        eps = float(rng.uniform(0, FANNES_EPS))
        s = _nearby(r, eps, rng)
        gap = abs(coherent_information(r, ["A"], ["B"]) - coherent_information(s, ["A"], ["B"]))
        worst["fannes-bound"] = max(worst["fannes-bound"], gap - fannes_bound(pair.total, eps))

    report = SuiteReport(seed, samples)
    for name, w in worst.items():
        report.checks.append(CheckOutcome(name, float(w), tol, samples))
    return report

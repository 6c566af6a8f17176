"""Seeded random states, unitaries and isometries."""

from __future__ import annotations

import numpy as np

from .layout import SystemLayout
from .objects import StateSpec


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def ginibre(rows: int, cols: int, rng) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_isometry(dout: int, din: int, rng=None) -> np.ndarray:
    """Haar-random isometry (dout x din) via QR with phase correction."""
    rng = _rng(rng)
    q, r = np.linalg.qr(ginibre(dout, din, rng))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_unitary(d: int, rng=None) -> np.ndarray:
    return random_isometry(d, d, rng)


def random_vector(d: int, rng=None) -> np.ndarray:
    rng = _rng(rng)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_pure_state(layout: SystemLayout, rng=None) -> StateSpec:
    return StateSpec.from_vector(layout, random_vector(layout.total, rng))


def random_density(layout: SystemLayout, rng=None, rank: int | None = None) -> StateSpec:
    """Induced-measure random state (Hilbert-Schmidt when rank is full)."""
    rng = _rng(rng)
    d = layout.total
    g = ginibre(d, rank or d, rng)
    m = g @ g.conj().T
    return StateSpec(layout, m / np.trace(m).real)


def random_probs(n: int, rng=None) -> np.ndarray:
    rng = _rng(rng)
    return rng.dirichlet(np.ones(n))

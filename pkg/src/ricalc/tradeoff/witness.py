"""Parameters of the single-letter states over which the trade-off regions
maximize.

Four witness kinds cover the six families:

* ``ensemble``: probabilities p_x and isometries U_x: A -> A'E'
  (mother and noisy super-dense coding),
* ``instrument``: Kraus operators K_x: A -> A'E' with sum K_x^dag K_x = I,
  i.e. an instrument with pure quantum output (noisy teleportation and
  entanglement distillation),
* ``input``: a pure input phi^{AA'} (father),
* ``pure-ensemble``: probabilities p_x and pure inputs phi_x^{AA'}
  (entanglement-assisted classical communication).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidWitness
from ..quantum.io import matrix_from_json, matrix_to_json
from ..quantum.random import random_isometry, random_probs, random_vector

WITNESS_KINDS = ("ensemble", "instrument", "input", "pure-ensemble")
ISO_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SigmaWitness:
    """One point of witness space.

    ``ops`` has shape (n_x, d_A' * d_E', d_A) for ``ensemble`` and
    ``instrument``, (d_A, d_A') for ``input`` and (n_x, d_A, d_A') for
    ``pure-ensemble``. ``probs`` is None for ``instrument`` (the outcome
    probabilities follow from the state) and ``input``.
    """

    kind: str
    ops: np.ndarray
    probs: np.ndarray | None = None
    dims: tuple = ()

    @property
    def n_outcomes(self) -> int:
        return 1 if self.kind == "input" else self.ops.shape[0]

    def validate(self) -> "SigmaWitness":
        if self.kind not in WITNESS_KINDS:
            raise InvalidWitness(f"unknown witness kind {self.kind!r}")
        if self.probs is not None:
            p = self.probs
            if np.any(p < -ISO_TOL) or abs(p.sum() - 1) > ISO_TOL:
                raise InvalidWitness("probabilities must be nonnegative and sum to 1")
            if len(p) != self.ops.shape[0]:
                raise InvalidWitness("one probability per outcome required")
        elif self.kind in ("ensemble", "pure-ensemble"):
            raise InvalidWitness(f"{self.kind} witness needs probabilities")
        if self.kind == "ensemble":
            for v in self.ops:
                if np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))) > ISO_TOL:
                    raise InvalidWitness("U_x is not an isometry")
        elif self.kind == "instrument":
            gram = np.einsum("xki,xkj->ij", self.ops.conj(), self.ops)
            if np.max(np.abs(gram - np.eye(gram.shape[0]))) > ISO_TOL:
                raise InvalidWitness("instrument operators do not sum to the identity")
        else:
            vecs = self.ops.reshape(self.n_outcomes, -1)
            if np.max(np.abs(np.linalg.norm(vecs, axis=1) - 1)) > ISO_TOL:
                raise InvalidWitness("input states must be normalized")
        return self

    def to_json(self) -> dict:
        d = {"kind": self.kind, "dims": list(self.dims)}
        if self.probs is not None:
            d["probs"] = [float(x) for x in self.probs]
        ops = self.ops if self.kind != "input" else self.ops[None]
        d["ops"] = [matrix_to_json(m) for m in ops]
        return d

    @classmethod
    def from_json(cls, obj) -> "SigmaWitness":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            ops = np.stack([matrix_from_json(m) for m in obj["ops"]])
            kind = obj["kind"]
            if kind == "input":
                ops = ops[0]
            probs = np.asarray(obj["probs"], dtype=float) if "probs" in obj else None
            return cls(kind, ops, probs, tuple(obj.get("dims", ()))).validate()
        except (KeyError, ValueError, TypeError) as exc:
            if isinstance(exc, InvalidWitness):
                raise
            raise InvalidWitness(f"malformed witness: {exc}") from None


# -- construction ----------------------------------------------------------

def _embed(d_a: int, d_e: int, env_index: int = 0, swap: bool = False) -> np.ndarray:
    """A -> A'E' placing A into A' (or E' when ``swap``) with the other in |env_index>."""
    v = np.zeros((d_a * d_e, d_a), dtype=complex)
    for a in range(d_a):
        row = env_index * d_e + a if swap else a * d_e + env_index
        v[row, a] = 1
    return v


def canonical_witnesses(kind: str, d_a: int, d_in: int | None = None) -> list[SigmaWitness]:
    """Deterministic starting points that realize the textbook protocols.

    For ensembles these are "send A as is" and "discard A"; for
    instruments "do nothing" and "measure in the computational basis";
    for channel inputs the maximally entangled state; for pure ensembles
    the maximally entangled state and the uniform basis-state ensemble.
    """
    d_e = d_a
    if kind == "ensemble":
        keep = _embed(d_a, d_e)
        drop = _embed(d_a, d_e, 0, swap=True)
        return [SigmaWitness(kind, keep[None], np.ones(1), (d_a, d_e)),
                SigmaWitness(kind, drop[None], np.ones(1), (d_a, d_e))]
    if kind == "instrument":
        keep = _embed(d_a, d_e)[None]
        meas = np.zeros((d_a, d_a * d_e, d_a), dtype=complex)
        for x in range(d_a):
            meas[x, x, x] = 1  # outcome x, A' = |0>, E' = |x>
        return [SigmaWitness(kind, keep, None, (d_a, d_e)),
                SigmaWitness(kind, meas, None, (d_a, d_e))]
    d_in = d_in or d_a
    phi = np.eye(d_a, d_in, dtype=complex) / np.sqrt(min(d_a, d_in))
    if kind == "input":
        return [SigmaWitness(kind, phi, None, (d_a, d_in))]
    if kind == "pure-ensemble":
        basis = np.zeros((d_in, d_a, d_in), dtype=complex)
        for x in range(d_in):
            basis[x, 0, x] = 1
        return [SigmaWitness(kind, phi[None], np.ones(1), (d_a, d_in)),
                SigmaWitness(kind, basis, np.full(d_in, 1 / d_in), (d_a, d_in))]
    raise InvalidWitness(f"unknown witness kind {kind!r}")


def random_witness(kind: str, d_a: int, rng, x_max: int = 4,
                   d_in: int | None = None) -> SigmaWitness:
    """Haar-random isometries/states and Dirichlet probabilities; |X| uniform in 1..x_max."""
    d_e = d_a
    nx = int(rng.integers(1, x_max + 1))
    if kind == "ensemble":
        ops = np.stack([random_isometry(d_a * d_e, d_a, rng) for _ in range(nx)])
        return SigmaWitness(kind, ops, random_probs(nx, rng), (d_a, d_e))
    if kind == "instrument":
        w = random_isometry(nx * d_a * d_e, d_a, rng)
        return SigmaWitness(kind, w.reshape(nx, d_a * d_e, d_a), None, (d_a, d_e))
    d_in = d_in or d_a
    if kind == "input":
        return SigmaWitness(kind, random_vector(d_a * d_in, rng).reshape(d_a, d_in), None,
                            (d_a, d_in))
    if kind == "pure-ensemble":
        ops = np.stack([random_vector(d_a * d_in, rng).reshape(d_a, d_in) for _ in range(nx)])
        return SigmaWitness(kind, ops, random_probs(nx, rng), (d_a, d_in))
    raise InvalidWitness(f"unknown witness kind {kind!r}")


# -- local moves -------------------------------------------------------------

def n_blocks(w: SigmaWitness) -> int:
    """Coordinate blocks: the probability vector (if any) and one per operator."""
    # instruments: the whole stacked isometry first, then each branch
    return 1 if w.kind == "input" else w.n_outcomes + 1


def random_direction(w: SigmaWitness, block: int, rng) -> np.ndarray:
    """A Hermitian generator (or simplex direction) for ``block``, unit scale."""
    if block == 0 and w.probs is not None:
        return rng.dirichlet(np.ones(w.n_outcomes)) - w.probs
    if w.kind == "instrument" and block == 0:
        d = w.ops.shape[0] * w.ops.shape[1]
    elif w.kind == "input":
        d = w.ops.size
    elif w.kind == "pure-ensemble":
        d = w.ops[0].size
    else:
        d = w.ops.shape[1]
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    g = (g + g.conj().T) / 2
    return g / np.linalg.norm(g)


def _exp_i(step: float, h: np.ndarray) -> np.ndarray:
    """exp(i step h) for Hermitian h."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * step * w)) @ v.conj().T


def move(w: SigmaWitness, block: int, step: float, direction) -> SigmaWitness | None:
    """Witness after a signed step along ``direction`` in ``block`` (None if it leaves the simplex)."""
    if block == 0 and w.probs is not None:
        p = w.probs + step * direction
        if np.any(p < 0):
            return None
        return SigmaWitness(w.kind, w.ops, p / p.sum(), w.dims)
    u = _exp_i(step, direction)
    if w.kind == "input":
        return SigmaWitness(w.kind, (u @ w.ops.ravel()).reshape(w.ops.shape), None, w.dims)
    ops = w.ops.copy()
    if w.kind == "instrument" and block == 0:
        nx, k, d = ops.shape
        return SigmaWitness(w.kind, (u @ ops.reshape(nx * k, d)).reshape(nx, k, d), None, w.dims)
    x = block - 1
    if w.kind == "pure-ensemble":
        ops[x] = (u @ ops[x].ravel()).reshape(ops[x].shape)
    else:
        ops[x] = u @ ops[x]
    return SigmaWitness(w.kind, ops, w.probs, w.dims)

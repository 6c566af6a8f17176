"""Core linear-algebra operations on labeled states."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..errors import DimensionMismatch, DuplicateLabel, NotTracePreserving, UnknownLabel
from .layout import SystemLayout
from .objects import ChannelSpec, InstrumentSpec, IsometrySpec, StateSpec

EIG_ZERO = 1e-12


def tensor(a: StateSpec, b: StateSpec, *more: StateSpec) -> StateSpec:
    """Tensor product in layout order."""
    out = a
    for nxt in (b,) + more:
        clash = set(out.labels) & set(nxt.labels)
        if clash:
            raise DuplicateLabel(f"labels {sorted(clash)} appear in both factors")
        out = StateSpec(out.layout.concat(nxt.layout), np.kron(out.matrix, nxt.matrix),
                        validate=False)
    return out


def permute_matrix(m: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a square matrix."""
    n = len(dims)
    t = m.reshape(tuple(dims) * 2)
    t = t.transpose(tuple(perm) + tuple(p + n for p in perm))
    d = int(np.prod(dims))
    return t.reshape(d, d)


def permute(s: StateSpec, order: Sequence[str]) -> StateSpec:
    """Return ``s`` with its subsystems listed in ``order``."""
    order = list(order)
    if sorted(order) != sorted(s.labels):
        raise UnknownLabel(f"order {order} is not a permutation of {list(s.labels)}")
    perm = [s.layout.index(l) for l in order]
    return StateSpec(s.layout.subset(order), permute_matrix(s.matrix, s.dims, perm),
                     validate=False)


def reduced_matrix(m: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace of a matrix onto factor indices ``keep`` (kept in given order)."""
    dims = list(dims)
    n = len(dims)
    trace_out = [i for i in range(n) if i not in keep]
    t = m.reshape(dims * 2)
    perm = list(keep) + trace_out
    t = t.transpose(perm + [p + n for p in perm])
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    dt = int(np.prod([dims[i] for i in trace_out])) if trace_out else 1
    t = t.reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def reduced_from_vector(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Restriction of the pure state ``psi`` onto factor indices ``keep``."""
    dims = list(dims)
    n = len(dims)
    rest = [i for i in range(n) if i not in keep]
    t = psi.reshape(dims).transpose(list(keep) + rest)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    t = t.reshape(dk, -1)
    return t @ t.conj().T


def partial_trace(s: StateSpec, keep: Iterable[str]) -> StateSpec:
    """Restriction of ``s`` to the labels in ``keep``.

    If ``keep`` is a set the original layout order is used, otherwise the
    order given.
    """
    if isinstance(keep, str):
        keep = [keep]
    if isinstance(keep, (set, frozenset)):
        s.layout.check_labels(keep)
        keep = [l for l in s.labels if l in keep]
    keep = list(keep)
    if not keep:
        raise UnknownLabel("keep must be non-empty")
    idx = [s.layout.index(l) for l in keep]
    if len(set(idx)) != len(idx):
        raise DuplicateLabel("repeated label in keep")
    m = reduced_matrix(s.matrix, s.dims, idx)
    return StateSpec(s.layout.subset(keep), m, validate=False)


def canonical_eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition with descending eigenvalues and fixed phases.

    The first component of each eigenvector whose magnitude exceeds 1e-12 is
    made real positive.
    """
    w, v = np.linalg.eigh(m)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            ph = col[nz[0]] / abs(col[nz[0]])
            v[:, k] = col / ph
    return w, v


def purification_vector(m: np.ndarray, rank_tol: float = EIG_ZERO) -> np.ndarray:
    """Canonical purifying vector, shape (dim, rank)."""
    w, v = canonical_eigh(m)
    r = max(1, int(np.sum(w > rank_tol)))
    w = np.clip(w[:r], 0, None)
    w = w / w.sum()
    return v[:, :r] * np.sqrt(w)


def purify(s: StateSpec, ref_label: str) -> StateSpec:
    """Canonical purification on ``s.labels + (ref_label,)``; reference dim = rank."""
    if ref_label in s.labels:
        raise DuplicateLabel(f"reference label {ref_label!r} already in use")
    psi = purification_vector(s.matrix)
    lay = s.layout.concat(SystemLayout((ref_label,), (psi.shape[1],)))
    return StateSpec.from_vector(lay, psi.ravel())


def stinespring(c: ChannelSpec, env_label: str) -> IsometrySpec:
    """Isometric extension V = sum_k K_k (x) |k>_env, environment last."""
    if c.cp_only:
        raise NotTracePreserving("Stinespring dilation needs a trace-preserving map")
    if env_label in c.out_layout.labels:
        raise DuplicateLabel(f"environment label {env_label!r} already in output")
    k = np.stack(c.kraus, axis=-1)  # (out, in, n)
    dout, din, n = k.shape
    v = k.transpose(0, 2, 1).reshape(dout * n, din)
    out = c.out_layout.concat(SystemLayout((env_label,), (n,)))
    return IsometrySpec(c.in_layout, out, v)


def _targets(s: StateSpec, d, targets) -> list[str]:
    if isinstance(targets, str):
        targets = [targets]
    targets = list(targets)
    s.layout.check_labels(targets)
    if len(set(targets)) != len(targets):
        raise DuplicateLabel("repeated target label")
    got = tuple(s.layout.dim(t) for t in targets)
    if got != d.in_layout.dims:
        raise DimensionMismatch(
            f"target dims {got} do not match input layout {d.in_layout}")
    return targets


def _apply_kraus(m, dims_rest, dt, kraus):
    dr = int(np.prod(dims_rest)) if dims_rest else 1
    t = m.reshape(dr, dt, dr, dt)
    dout = kraus[0].shape[0]
    out = np.zeros((dr, dout, dr, dout), dtype=complex)
    for k in kraus:
        out += np.einsum("ij,ajbk,lk->aibl", k, t, k.conj(), optimize=True)
    return out.reshape(dr * dout, dr * dout)


def apply(d, s: StateSpec, targets, out_labels: Sequence[str] | None = None) -> StateSpec:
    """Apply a channel or isometry to ``targets`` of ``s``.

    The output layout lists the untouched labels first (original order)
    followed by the operation's output layout, optionally renamed through
    ``out_labels``.
    """
    targets = _targets(s, d, targets)
    rest = [l for l in s.labels if l not in targets]
    moved = permute(s, rest + targets)
    dims_rest = [s.layout.dim(l) for l in rest]
    out_layout = d.out_layout
    if out_labels is not None:
        out_labels = list(out_labels)
        if len(out_labels) != len(out_layout):
            raise DimensionMismatch("out_labels length differs from output layout")
        out_layout = SystemLayout(tuple(out_labels), out_layout.dims)
    lay = s.layout.subset(rest).concat(out_layout)
    m = _apply_kraus(moved.matrix, dims_rest, d.in_layout.total, d.kraus)
    # a CPTP map of a valid state is valid; only roundoff needs cleaning
    return StateSpec(lay, (m + m.conj().T) / 2, validate=False)


def apply_instrument(t: InstrumentSpec, s: StateSpec, targets, outcome_label: str,
                     out_labels: Sequence[str] | None = None) -> StateSpec:
    """Return sum_x P_x(rho) (x) |x><x| with the outcome register appended last."""
    targets = _targets(s, t, targets)
    if outcome_label in s.labels or outcome_label in (out_labels or t.out_layout.labels):
        raise DuplicateLabel(f"outcome label {outcome_label!r} already in use")
    rest = [l for l in s.labels if l not in targets]
    moved = permute(s, rest + targets)
    dims_rest = [s.layout.dim(l) for l in rest]
    out_layout = t.out_layout
    if out_labels is not None:
        out_layout = SystemLayout(tuple(out_labels), out_layout.dims)
    nx = t.n_outcomes
    total = 0
    for x, branch in enumerate(t.branches):
        m = _apply_kraus(moved.matrix, dims_rest, t.in_layout.total, branch)
        proj = np.zeros((nx, nx))
        proj[x, x] = 1
        total = total + np.kron(m, proj)
    lay = (s.layout.subset(rest).concat(out_layout)
           .concat(SystemLayout((outcome_label,), (nx,))))
    return StateSpec(lay, total)


def relabel(s: StateSpec, mapping: dict) -> StateSpec:
    return s.relabel(mapping)


def merge_labels(s: StateSpec, labels: Sequence[str], new_label: str) -> StateSpec:
    """Fuse adjacent-after-permutation subsystems into one label."""
    labels = list(labels)
    rest = [l for l in s.labels if l not in labels]
    moved = permute(s, rest + labels)
    lay = s.layout.subset(rest).concat(
        SystemLayout((new_label,), (s.layout.dim_of(labels),)))
    return StateSpec(lay, moved.matrix, validate=False)


def compose(first: ChannelSpec, second: ChannelSpec) -> ChannelSpec:
    """Channel ``second o first`` (layouts must chain)."""
    if first.out_layout.dims != second.in_layout.dims:
        raise DimensionMismatch("layouts do not chain")
    kraus = [b @ a for a in first.kraus for b in second.kraus]
    return ChannelSpec(first.in_layout, second.out_layout, kraus)


def tensor_channels(a: ChannelSpec, b: ChannelSpec) -> ChannelSpec:
    kraus = [np.kron(x, y) for x in a.kraus for y in b.kraus]
    return ChannelSpec(a.in_layout.concat(b.in_layout), a.out_layout.concat(b.out_layout), kraus)

"""Trace distance, fidelity, operation distance and related bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from ..errors import DimensionMismatch, OutOfRange
from ..quantum.layout import SystemLayout
from ..quantum.objects import ChannelSpec, IsometrySpec, StateSpec
from ..quantum.ops import _apply_kraus, apply, canonical_eigh, partial_trace, permute
from ..quantum.random import random_isometry, random_vector
from ..quantum.validation import check_channel, check_same_layout


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values; Hermitian inputs use eigenvalues."""
    if np.allclose(m, m.conj().T, atol=1e-13):
        return float(np.sum(np.abs(np.linalg.eigvalsh((m + m.conj().T) / 2))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def trace_distance(a: StateSpec, b: StateSpec) -> float:
    """||a - b||_1 (no factor 1/2)."""
    check_same_layout(a, b)
    return trace_norm(a.matrix - b.matrix)


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def fidelity(a: StateSpec, b: StateSpec) -> float:
    """F = ||sqrt(a) sqrt(b)||_1^2, clipped into [0, 1]."""
    check_same_layout(a, b)
    return fidelity_matrices(a.matrix, b.matrix)


def fidelity_matrices(a: np.ndarray, b: np.ndarray) -> float:
    s = np.linalg.svd(psd_sqrt(a) @ psd_sqrt(b), compute_uv=False)
    return float(min(1.0, max(0.0, np.sum(s) ** 2)))


@dataclass(frozen=True)
class DistanceReport:
    trace_distance: float
    fidelity: float

    def fuchs_van_de_graaf(self) -> tuple[float, float, float]:
        """(1 - sqrt F, T/2, sqrt(1 - F)); the middle value is sandwiched."""
        return (1 - np.sqrt(self.fidelity), self.trace_distance / 2,
                np.sqrt(max(0.0, 1 - self.fidelity)))


def distance_report(a: StateSpec, b: StateSpec) -> DistanceReport:
    return DistanceReport(trace_distance(a, b), fidelity(a, b))


def fannes_bound(dim: int, eps: float) -> float:
    """eta(eps) + eps * log2(dim) with eta(eps) = -eps log2 eps for eps <= 1/e.

    Above 1/e, eta is capped at log2(dim). The constant in front of the
    linear term is fixed to 1.
    """
    if dim < 2:
        raise OutOfRange("dim must be at least 2")
    if not 0 <= eps <= 2:
        raise OutOfRange("eps must lie in [0, 2]")
    if eps == 0:
        return 0.0
    eta = -eps * np.log2(eps) if eps <= 1 / np.e else np.log2(dim)
    return float(eta + eps * np.log2(dim))


def helstrom_probability(a: StateSpec, b: StateSpec) -> float:
    """Optimal equal-prior discrimination probability 1/2 + ||a-b||_1 / 4."""
    return 0.5 + trace_distance(a, b) / 4


def projective_search_probability(a: np.ndarray, b: np.ndarray, n: int = 10_000,
                                  rng=None) -> float:
    """Best success probability found over ``n`` random rank-one projective tests."""
    rng = np.random.default_rng(rng)
    d = a.shape[0]
    best = 0.5
    diff = a - b
    for _ in range(n):
        v = random_vector(d, rng)
        p = float(np.real(v.conj() @ diff @ v))
        # guess a on outcome v, b otherwise, or the reverse
        best = max(best, 0.5 + abs(p) / 2)
    return best


def _op_pair(m, n):
    m, n = check_channel(m), check_channel(n)
    if m.in_layout.dims != n.in_layout.dims or m.out_layout.dims != n.out_layout.dims:
        raise DimensionMismatch("operations have different input/output layouts")
    return m, n


def _diff_norm_on_vector(m, n, psi, d_ref, d_in):
    rho = np.outer(psi, psi.conj())
    out = (_apply_kraus(rho, [d_ref], d_in, m.kraus)
           - _apply_kraus(rho, [d_ref], d_in, n.kraus))
    return trace_norm(out)


def _vec_from_params(x, shape):
    n = int(np.prod(shape))
    z = x[:n] + 1j * x[n:]
    return z.reshape(shape)


def op_distance(m, n, omega: StateSpec | None = None, *, restarts: int = 64,
                seed: int = 0, refine: int = 4) -> float:
    """Distance ||M - N||_omega between two operations.

    With ``omega`` covering every input label the value is exact: it is
    evaluated on the canonical purification of ``omega`` (all extensions give
    at most this value). With ``omega`` on a proper subset of the input
    labels, or ``omega=None`` (absolute mode), the supremum over extensions is
    estimated by ``restarts`` random starts plus local refinement of the best
    ``refine`` candidates; the result is the best value found and hence a lower
    bound on the true supremum.
    """
    m, n = _op_pair(m, n)
    inl = m.in_layout
    d_in = inl.total
    if omega is not None:
        inl.check_labels(omega.labels)
        if set(omega.labels) == set(inl.labels):
            om = permute(omega, list(inl.labels))
            w, v = canonical_eigh(om.matrix)
            w = np.clip(w, 0, None)
            psi = (v * np.sqrt(w)).ravel()  # input (x) reference, reference dim d_in
            return _diff_norm_on_vector(m, n, _swap(psi, d_in, d_in), d_in, d_in)
        return _op_distance_partial(m, n, omega, restarts, seed, refine)
    rng = np.random.default_rng(seed)
    d_ref = d_in

    def value(x):
        psi = _vec_from_params(x, (d_ref * d_in,))
        psi = psi / np.linalg.norm(psi)
        return _diff_norm_on_vector(m, n, psi, d_ref, d_in)

    starts = [np.concatenate([np.eye(d_in).ravel(), np.zeros(d_in * d_in)])]
    for _ in range(restarts):
        v = random_vector(d_ref * d_in, rng)
        starts.append(np.concatenate([v.real, v.imag]))
    return _multistart(value, starts, refine)


def _swap(psi, d_a, d_r):
    """Reorder a vector from (A, R) to (R, A) factor order."""
    return psi.reshape(d_a, d_r).T.ravel()


def _multistart(value, starts, refine):
    scored = sorted(((value(x), i) for i, x in enumerate(starts)), key=lambda t: (-t[0], t[1]))
    best = scored[0][0]
    for _, i in scored[:refine]:
        res = minimize(lambda x: -value(x), starts[i], method="Powell",
                       options={"xtol": 1e-8, "ftol": 1e-10, "maxfev": 4000})
        best = max(best, -res.fun)
    return float(best)


def _op_distance_partial(m, n, omega, restarts, seed, refine):
    inl = m.in_layout
    rel = list(omega.labels)
    other = [l for l in inl.labels if l not in rel]
    d1 = inl.dim_of(rel)
    d2 = inl.dim_of(other)
    om = permute(omega, rel)
    w, v = canonical_eigh(om.matrix)
    r = max(1, int(np.sum(w > 1e-12)))
    base = v[:, :r] * np.sqrt(np.clip(w[:r], 0, None))  # (d1, r)
    d_ref = d1 * d2
    rng = np.random.default_rng(seed)
    # channel inputs are ordered as inl.labels; build a permutation from (rel, other)
    order = rel + other
    perm = [order.index(l) for l in inl.labels]
    dims_ro = [inl.dim(l) for l in order]

    def vector(vmat):
        # vmat: isometry r -> (d2 * d_ref); xi[a1, a2, R] = sum_k base[a1,k] vmat[(a2,R),k]
        xi = np.einsum("ak,bk->ab", base, vmat).reshape(d1, d2, d_ref)
        xi = xi.reshape(dims_ro + [d_ref])
        xi = xi.transpose(perm + [len(order)]).reshape(d1 * d2, d_ref)
        return xi.T.ravel()

    def value(x):
        g = _vec_from_params(x, (d2 * d_ref, r))
        q, _ = np.linalg.qr(g)
        return _diff_norm_on_vector(m, n, vector(q), d_ref, d1 * d2)

    starts = []
    for _ in range(restarts):
        g = random_isometry(d2 * d_ref, r, rng)
        starts.append(np.concatenate([g.real.ravel(), g.imag.ravel()]))
    return _multistart(value, starts, refine)


def uhlmann_search(a: StateSpec, b: StateSpec, restarts: int = 8, seed: int = 0) -> float:
    """max |<psi|(I (x) U)|phi>|^2 over reference unitaries U, by numerical search.

    Both purifications use a reference of full dimension so that the search
    space contains every purification up to the reference unitary.
    """
    check_same_layout(a, b)
    d = a.layout.total
    wa, va = canonical_eigh(a.matrix)
    wb, vb = canonical_eigh(b.matrix)
    pa = va * np.sqrt(np.clip(wa, 0, None))  # (d, ref)
    pb = vb * np.sqrt(np.clip(wb, 0, None))
    rng = np.random.default_rng(seed)

    def overlap(x):
        h = x[: d * d].reshape(d, d) + 1j * x[d * d:].reshape(d, d)
        h = (h + h.conj().T) / 2
        u = expm(1j * h)
        return abs(np.sum(pb.conj() * (pa @ u.T))) ** 2

    best = 0.0
    for k in range(restarts):
        x0 = np.zeros(2 * d * d) if k == 0 else rng.normal(size=2 * d * d)
        res = minimize(lambda x: -overlap(x), x0, method="BFGS", options={"gtol": 1e-10})
        best = max(best, -res.fun)
    return float(best)


def aligned_extension(rho: StateSpec, sigma_ext: StateSpec) -> StateSpec:
    """Extension rho' of rho built from the Uhlmann-optimal purification.

    ``sigma_ext`` lives on rho's labels plus extra labels. The purification of
    ``sigma_ext`` is matched by the purification of ``rho`` that maximizes the
    overlap, and its restriction to ``sigma_ext``'s labels is returned.
    """
    lab_a = list(rho.labels)
    extra = [l for l in sigma_ext.labels if l not in lab_a]
    sig = permute(sigma_ext, lab_a + extra)
    da, db = rho.layout.total, sig.layout.dim_of(extra) if extra else 1
    w, v = canonical_eigh(sig.matrix)
    phi = (v * np.sqrt(np.clip(w, 0, None))).reshape(da, db * da * db)  # A x (B C)
    wr, vr = canonical_eigh(rho.matrix)
    r = max(1, int(np.sum(wr > 1e-12)))
    psi0 = vr[:, :r] * np.sqrt(np.clip(wr[:r], 0, None))  # A x R
    mmat = psi0.T @ phi.conj()  # R x BC
    u, _, vh = np.linalg.svd(mmat, full_matrices=False)
    wiso = vh.conj().T @ u.conj().T  # BC x R
    psi = psi0 @ wiso.T  # A x (B C)
    t = psi.reshape(da * db, da * db)  # (A B) x C
    rho_ab = t @ t.conj().T
    lay = sig.layout
    out = StateSpec(lay, rho_ab / np.trace(rho_ab).real)
    return permute(out, list(sigma_ext.labels))

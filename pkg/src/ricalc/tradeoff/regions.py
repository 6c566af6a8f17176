"""The six single-letter regions and the evaluation of one witness.

Each family has a constraint c(sigma) that must stay below the budget and
an objective o(sigma); the region at budget b is

    MOTHER, NSD:  value <= b + o(sigma)  for c(sigma) <= b
    NTP, ED, EAC: value <= o(sigma)      for c(sigma) <= b
    FATHER:       value <= min(b + c(sigma), o(sigma))

together with value >= 0. For the father family c is I(A>B) and o is
I(A;B)/2, the two bounds on Q.

Two evaluators are provided. :func:`eval_point` builds sigma as a
StateSpec and uses the entropy routines; it is the reference. The
:class:`Evaluator` works branch by branch on pure vectors and is what the
optimizer calls; the two agree to rounding.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionMismatch, InvalidWitness, UnknownKind
from ..info.entropy import (EIG_ZERO, coherent_information, conditional_entropy,
                            conditional_mutual_information, mutual_information)
from ..quantum.layout import SystemLayout
from ..quantum.objects import ChannelSpec, StateSpec
from ..quantum.ops import (apply, partial_trace, purification_vector, purify, stinespring,
                           tensor)
from ..quantum.validation import check_channel, check_state
from .witness import SigmaWitness


@dataclass(frozen=True)
class Family:
    name: str
    static: bool
    witness_kind: str
    axes: tuple
    linear: bool  # value = budget + objective
    description: str

    def feasible(self, budget: float, constraint: float, tol: float = 0.0) -> bool:
        return self.name == "FATHER" or constraint <= budget + tol

    def value(self, budget: float, constraint: float, objective: float) -> float:
        """Largest value certified at ``budget`` by a witness (clipped at 0)."""
        if self.name == "FATHER":
            v = min(budget + constraint, objective)
        else:
            v = budget + objective if self.linear else objective
        return max(0.0, v)

    def budget_max(self, d: int) -> float:
        """Budget beyond which the constraint can no longer bind."""
        if self.name in ("NTP", "ED"):
            return 2 * np.log2(d)
        return float(np.log2(d))


FAMILIES = {
    "NSD": Family("NSD", True, "ensemble", ("Q", "R"), True,
                  "R <= Q + max I(A'>BX) subject to H(A'|X) <= Q"),
    "MOTHER": Family("MOTHER", True, "ensemble", ("Q", "E"), True,
                     "E <= Q + max I(A'>BX) subject to I(A';EE'|X)/2 <= Q"),
    "NTP": Family("NTP", True, "instrument", ("R", "Q"), False,
                  "Q <= max I(A'>BX) subject to I(A';B|X) + I(X;BE) <= R"),
    "ED": Family("ED", True, "instrument", ("R", "E"), False,
                 "E <= max I(A'>BX) subject to I(A';EE'|X) + I(X;BE) <= R"),
    "FATHER": Family("FATHER", False, "input", ("E", "Q"), False,
                     "Q <= E + I(A>B) and Q <= I(A;B)/2"),
    "EAC": Family("EAC", False, "pure-ensemble", ("E", "R"), False,
                  "R <= max I(AX;B) subject to H(A|X) <= E"),
}


def get_family(name: str) -> Family:
    key = name.upper()
    if key not in FAMILIES:
        raise UnknownKind(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}")
    return FAMILIES[key]


@dataclass(frozen=True)
class PointValue:
    constraint: float
    objective: float
    extras: dict = field(default_factory=dict)


# -- normalization of the noisy object ---------------------------------------

def as_static(rho: StateSpec) -> StateSpec:
    """Check a bipartite state and relabel it to (A, B)."""
    rho = check_state(rho)
    if len(rho.labels) != 2:
        raise DimensionMismatch(f"static families need a bipartite state, got {rho.labels}")
    return rho.relabel(dict(zip(rho.labels, ("A", "B"))))


def as_dynamic(channel: ChannelSpec) -> ChannelSpec:
    """Check a single-input, single-output channel and relabel it to A' -> B."""
    channel = check_channel(channel)
    if len(channel.in_layout) != 1 or len(channel.out_layout) != 1:
        raise DimensionMismatch("dynamic families need a channel with one input and one output")
    return channel.relabel({channel.in_layout.labels[0]: "A'"},
                           {channel.out_layout.labels[0]: "B"})


def fingerprint(obj) -> str:
    """Short stable hash identifying the noisy object."""
    h = hashlib.sha256()
    if isinstance(obj, StateSpec):
        h.update(np.ascontiguousarray(np.round(obj.matrix, 12)).tobytes())
        h.update(repr(obj.dims).encode())
    else:
        for k in obj.kraus:
            h.update(np.ascontiguousarray(np.round(k, 12)).tobytes())
    return h.hexdigest()[:16]


def _check_kind(family: Family, obj, witness: SigmaWitness):
    if witness.kind != family.witness_kind:
        raise InvalidWitness(f"{family.name} needs a {family.witness_kind} witness, "
                             f"got {witness.kind}")
    if family.static != isinstance(obj, StateSpec):
        need = "state" if family.static else "channel"
        raise InvalidWitness(f"{family.name} is evaluated on a {need}")


# -- reference evaluation ------------------------------------------------------

def _classical(x: int, n: int) -> StateSpec:
    m = np.zeros((n, n))
    m[x, x] = 1
    return StateSpec(SystemLayout(("X",), (n,)), m, validate=False)


def _mix(parts) -> StateSpec:
    """sum_x |x><x| (x) part_x where the parts carry their own weights."""
    n = len(parts)
    total = sum(tensor(_classical(x, n), s).matrix for x, s in enumerate(parts))
    lay = SystemLayout(("X",), (n,)).concat(parts[0].layout)
    return StateSpec(lay, total)


def sigma_state(family: Family, obj, witness: SigmaWitness) -> StateSpec:
    """The state sigma of ``family`` defined by ``witness`` on ``obj``.

    Static families: labels X, B, E, A', E' (E' dropped for NSD/NTP).
    Father: A, B, E. EAC: X, A, B.
    """
    _check_kind(family, obj, witness)
    witness.validate()
    if family.static:
        rho = as_static(obj)
        psi = purify(rho, "E")
        d_a, d_e = witness.dims
        in_lay = SystemLayout(("A",), (rho.layout.dim("A"),))
        out_lay = SystemLayout(("A'", "E'"), (d_a, d_e))
        parts = []
        for x, k in enumerate(witness.ops):
            c = ChannelSpec(in_lay, out_lay, [k], cp_only=True)
            branch = apply(c, psi, ["A"])
            if witness.probs is not None:
                branch = StateSpec(branch.layout, witness.probs[x] * branch.matrix,
                                   validate=False)
            parts.append(branch)
        sigma = _mix(parts)
        if family.name in ("NSD", "NTP"):
            sigma = partial_trace(sigma, [l for l in sigma.labels if l != "E'"])
        return sigma
    ch = as_dynamic(obj)
    d_a, d_in = witness.dims
    if d_in != ch.in_layout.total:
        raise InvalidWitness("witness input dimension differs from the channel input")
    lay = SystemLayout(("A", "A'"), (d_a, d_in))
    if family.name == "FATHER":
        phi = StateSpec.from_vector(lay, witness.ops.ravel())
        return apply(stinespring(ch, "E"), phi, ["A'"])
    parts = []
    for x, v in enumerate(witness.ops):
        out = apply(ch, StateSpec.from_vector(lay, v.ravel()), ["A'"])
        parts.append(StateSpec(out.layout, witness.probs[x] * out.matrix, validate=False))
    return _mix(parts)


def eval_point(family, witness: SigmaWitness, obj) -> PointValue:
    """Constraint and objective of ``witness`` computed on the explicit sigma state."""
    family = get_family(family) if isinstance(family, str) else family
    s = sigma_state(family, obj, witness)
    name = family.name
    if name in ("NSD", "MOTHER", "NTP", "ED"):
        ic = coherent_information(s, ["A'"], ["B", "X"])
        if name == "NSD":
            c = conditional_entropy(s, ["A'"], ["X"])
        elif name == "MOTHER":
            c = conditional_mutual_information(s, ["A'"], ["E", "E'"], ["X"]) / 2
        else:
            ixbe = mutual_information(s, ["X"], ["B", "E"])
            env = ["B"] if name == "NTP" else ["E", "E'"]
            c = conditional_mutual_information(s, ["A'"], env, ["X"]) + ixbe
        return PointValue(c, ic)
    if name == "FATHER":
        return PointValue(coherent_information(s, ["A"], ["B"]),
                          mutual_information(s, ["A"], ["B"]) / 2,
                          {"I(A;E)": mutual_information(s, ["A"], ["E"])})
    return PointValue(conditional_entropy(s, ["A"], ["X"]),
                      mutual_information(s, ["A", "X"], ["B"]))


# -- fast evaluation -------------------------------------------------------------

def _entropies(mats: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(mats)
    w = np.where(w > EIG_ZERO, w, 1.0)
    return -np.sum(w * np.log2(w), axis=-1)


def _batched_entropies(*groups: np.ndarray) -> list[np.ndarray]:
    """Entropies of several stacks of density matrices with one eigensolve.

    Smaller matrices are zero-padded; zero eigenvalues add no entropy.
    """
    size = max(g.shape[-1] for g in groups)
    total = sum(len(g) for g in groups)
    big = np.zeros((total, size, size), dtype=complex)
    k = 0
    for g in groups:
        d = g.shape[-1]
        big[k:k + len(g), :d, :d] = g
        k += len(g)
    h = _entropies(big)
    out, k = [], 0
    for g in groups:
        out.append(h[k:k + len(g)])
        k += len(g)
    return out


def _gram(t: np.ndarray, d: int) -> np.ndarray:
    """Reduced matrices of branch vectors whose leading axes (after the batch) span d."""
    m = t.reshape(t.shape[0], d, -1)
    return m @ m.conj().transpose(0, 2, 1)


class Evaluator:
    """Branch-wise evaluation of (constraint, objective) for one noisy object.

    Every branch of sigma is pure (static families, EAC inputs) or becomes
    pure after adjoining the channel environment (father, EAC), so all
    entropies come from small reduced matrices of branch vectors.
    """

    def __init__(self, family, obj):
        self.family = get_family(family) if isinstance(family, str) else family
        if self.family.static:
            self.obj = as_static(obj)
            vec = purification_vector(self.obj.matrix)  # same as purify(.., "E")
            self.d = self.obj.layout.dim("A")
            self.shape = self.obj.dims + (vec.shape[1],)  # (d_A, d_B, d_E)
            self.psi = vec.ravel()
        else:
            self.obj = as_dynamic(obj)
            v = stinespring(self.obj, "E").matrix
            self.d = self.obj.in_layout.total
            d_b = self.obj.out_layout.total
            self.vn = v.reshape(d_b, -1, self.d)  # (B, E, A')
        self.key = fingerprint(self.obj)
        self._cache: dict = {}

    def __call__(self, w: SigmaWitness) -> PointValue:
        name = self.family.name
        if name in ("NSD", "MOTHER", "NTP", "ED"):
            return self._static(w)
        if name == "FATHER":
            return self._father(w)
        return self._eac(w)

    def _branches(self, ops: np.ndarray, dims: tuple, with_be: bool) -> tuple:
        """Per-operator weight and entropies, cached by operator bytes.

        Returns arrays (weight, H(A'), H(B), H(EE'), H(BE)) and the stack of
        normalized rho^{BE} matrices (None unless ``with_be``).
        """
        d_a, d_b, d_e = self.shape
        dp, dq = dims
        keys = [o.tobytes() for o in ops]
        if len(self._cache) > 50_000:
            self._cache.clear()
        missing = [i for i, k in enumerate(keys) if k not in self._cache]
        if missing:
            sub = ops[missing]
            n = len(sub)
            br = (sub @ self.psi.reshape(d_a, d_b * d_e)).reshape(n, dp, dq, d_b, d_e)
            norms = np.sum(np.abs(br.reshape(n, -1)) ** 2, axis=1)
            safe = np.where(norms > 1e-14, norms, 1.0)
            br = br / np.sqrt(safe)[:, None, None, None, None]
            groups = [_gram(br, dp), _gram(br.transpose(0, 3, 1, 2, 4), d_b),
                      _gram(br.transpose(0, 2, 4, 1, 3), dq * d_e)]
            rho_be = _gram(br.transpose(0, 3, 4, 1, 2), d_b * d_e) if with_be else None
            if with_be:
                groups.append(rho_be)
            hs = _batched_entropies(*groups)
            for t, i in enumerate(missing):
                self._cache[keys[i]] = (norms[t], *(h[t] for h in hs),
                                        rho_be[t] if with_be else None)
        rows = [self._cache[k] for k in keys]
        cols = list(zip(*rows))
        stats = [np.array(c) for c in cols[:-1]]
        be = np.stack(cols[-1]) if with_be else None
        return stats, be

    def _static(self, w: SigmaWitness) -> PointValue:
        name = self.family.name
        with_be = name in ("NTP", "ED")
        stats, rho_be = self._branches(w.ops, w.dims, with_be)
        norms, h_a, h_b, h_ee = stats[:4]
        p = w.probs if w.probs is not None else norms
        keep = p > 1e-14
        p = np.where(keep, p, 0.0)
        p = p / p.sum()
        ic = float(p @ (h_b - h_ee))
        if name == "NSD":
            return PointValue(float(p @ h_a), ic)
        if name == "MOTHER":
            return PointValue(float(p @ (h_a + h_ee - h_b)) / 2, ic)
        h_be = stats[4]
        avg = np.tensordot(p, rho_be, axes=1)
        ixbe = float(_entropies(avg[None])[0] - p @ h_be)
        if name == "NTP":
            return PointValue(float(p @ (h_a + h_b - h_ee)) + ixbe, ic)
        return PointValue(float(p @ (h_a + h_ee - h_b)) + ixbe, ic)

    def _outputs(self, phis: np.ndarray) -> np.ndarray:
        # phis: (n, A, A') -> branch vectors (n, A, B, E)
        return np.einsum("xai,bei->xabe", phis, self.vn)

    def _father(self, w: SigmaWitness) -> PointValue:
        br = self._outputs(w.ops[None])
        h_a = _entropies(np.einsum("xabe,xcbe->xac", br, br.conj()))[0]
        h_b = _entropies(np.einsum("xabe,xace->xbc", br, br.conj()))[0]
        h_e = _entropies(np.einsum("xabe,xabf->xef", br, br.conj()))[0]
        return PointValue(float(h_b - h_e), float(h_a + h_b - h_e) / 2,
                          {"I(A;E)": float(h_a + h_e - h_b)})

    def _eac(self, w: SigmaWitness) -> PointValue:
        br = self._outputs(w.ops)
        p = w.probs
        h_a = _entropies(np.einsum("xabe,xcbe->xac", br, br.conj()))
        h_e = _entropies(np.einsum("xabe,xabf->xef", br, br.conj()))
        rho_b = np.einsum("x,xabe,xace->bc", p, br, br.conj())
        h_b = _entropies(rho_b[None])[0]
        return PointValue(float(p @ h_a), float(h_b + p @ (h_a - h_e)))


"""Absolutization by twirling: a channel that is only guaranteed on the
maximally mixed input becomes a channel that works on every input once
Alice and Bob share randomness.

Alice applies a key-controlled unitary before the channel and Bob undoes
it afterwards. For the perfect quantum channel the key indexes the d^2
Weyl operators; for the coherent channel Alice additionally undoes the
copy that landed on her side; for the perfect classical channel the key
indexes the d cyclic shifts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra.grammar import parse_expr
from ..errors import DimensionMismatch, UnknownKind, UnknownLabel
from ..info.distance import trace_norm
from ..quantum.layout import SystemLayout
from ..quantum.objects import IsometrySpec, StateSpec
from ..quantum.ops import apply, partial_trace, permute, tensor
from ..quantum.standard import shift, standard_object, weyl, weyl_operators
from .lab import ALICE, BOB, REF, Lab, copy_isometry, dephasing_channel
from .units import SimResult

KINDS = ("id", "coherent", "classical")
KEY_A, KEY_B = "K_A", "K_B"
_CHANNEL_NAME = {"id": "Id", "coherent": "Delta", "classical": "Idbar"}


def intertwiner(a: int, b: int, d: int) -> np.ndarray:
    """V with Delta (X^a Z^b) = (V (x) X^a Z^b) Delta; it is X^a."""
    return weyl(a, 0, d)


def intertwining_error(d: int) -> float:
    """Largest deviation from the intertwining relation over all keys."""
    delta = standard_object("Delta", d).matrix
    worst = 0.0
    for a in range(d):
        for b in range(d):
            u = weyl(a, b, d)
            lhs = delta @ u
            rhs = np.kron(intertwiner(a, b, d), u) @ delta
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def _keys(kind: str, d: int) -> list[np.ndarray]:
    if kind == "classical":
        return [np.linalg.matrix_power(shift(d), x) for x in range(d)]
    return weyl_operators(d)


def _phibar(n: int) -> StateSpec:
    return standard_object("Phibar", n).relabel({"X_A": KEY_A, "X_B": KEY_B})


def _channel(kind: str, d: int, source: str):
    if kind == "id":
        return IsometrySpec(SystemLayout((source,), (d,)), SystemLayout(("B",), (d,)),
                            np.eye(d, dtype=complex))
    if kind == "coherent":
        return copy_isometry(d, source, source, "B")
    return dephasing_channel(d, source, "B")


def _check_input(state: StateSpec, d: int, payload: str) -> list[str]:
    if payload not in state.labels:
        raise DimensionMismatch(f"input needs a channel input system {payload!r}")
    if state.layout.dim(payload) != d:
        raise DimensionMismatch(f"{payload!r} has dimension {state.layout.dim(payload)}, "
                                f"expected {d}")
    return [l for l in state.labels if l != payload]


@dataclass
class TwirlResult(SimResult):
    """SimResult of a twirl, also keeping the state of each key branch.

    The joint state is sum_x p_x |x x><x x| (x) branch_x on (K_A, K_B, rest),
    which is block diagonal in the key, so distances reduce to weighted
    sums over branches.
    """

    branches: list = field(default_factory=list)
    qp_branches: list = field(default_factory=list)


def _keyed(branches: list) -> StateSpec:
    """Assemble sum_x |x x><x x| (x) branch_x / n on (K_A, K_B, ...)."""
    n = len(branches)
    dr = branches[0].layout.total
    m = np.zeros((n * n * dr, n * n * dr), dtype=complex)
    for x, b in enumerate(branches):
        i = (x * n + x) * dr
        m[i:i + dr, i:i + dr] = b.matrix / n
    lay = SystemLayout((KEY_A, KEY_B), (n, n)).concat(branches[0].layout)
    return StateSpec(lay, m, validate=False)


def _branch_distance(branches: list, other: np.ndarray) -> float:
    return float(np.mean([trace_norm(b.matrix - other) for b in branches]))


def _branch_residual(branches: list) -> float:
    avg = np.mean([b.matrix for b in branches], axis=0)
    return _branch_distance(branches, avg)


def _run_branch(kind, d, state, payload, refs, u, v, keep_env):
    lab = Lab(state, {**{r: REF for r in refs}, payload: ALICE}, keep_env)
    if kind == "classical":
        lab.measure(ALICE, payload)
    lab.unitary(ALICE, u, payload)
    twirled = lab.view([payload])
    if kind == "coherent":
        lab.transmit(_channel(kind, d, payload), payload, [payload, "B"], [ALICE, BOB])
    else:
        lab.transmit(_channel(kind, d, payload), payload, ["B"], [BOB])
    lab.unitary(BOB, u.conj().T, "B")
    if v is not None:
        lab.unitary(ALICE, v.conj().T, payload)
    return lab, twirled


def run_absolutize(kind: str, d: int, state: StateSpec, *, payload: str = "A'",
                   keep_env: bool = False) -> TwirlResult:
    """Simulate the twirled use of channel ``kind`` on input ``state``.

    The shared key is uniform over d^2 Weyl operators (d cyclic shifts for
    the classical kind). ``details`` records ``input_distance`` (channel
    input against tau_d) and ``intertwining_error``. ``accuracy`` compares
    the final state of keys, references and outputs with Phibar (x) N(phi).
    """
    if kind not in KINDS:
        raise UnknownKind(f"unknown absolutization kind {kind!r}; expected one of {KINDS}")
    refs = _check_input(state, d, payload)
    keys = _keys(kind, d)
    err = 0.0
    if kind == "coherent":
        err = intertwining_error(d)
        if err > 1e-12:
            raise AssertionError(f"intertwining relation fails by {err:.3g}")
    outs = [payload, "B"] if kind == "coherent" else ["B"]
    order = refs + outs

    branches, qp_branches, inputs, env = [], [], [], []
    for x, u in enumerate(keys):
        v = intertwiner(x // d, x % d, d) if kind == "coherent" else None
        lab, twirled = _run_branch(kind, d, state, payload, refs, u, v, keep_env)
        inputs.append(twirled.matrix)
        branches.append(lab.view(order))
        if keep_env:
            env = lab.env_labels()
            qp_branches.append(lab.ordered(order + env))
    tau = np.eye(d) / d
    input_distance = trace_norm(np.mean(inputs, axis=0) - tau)

    ideal = permute(apply(_channel(kind, d, payload), state, [payload], outs), order)
    target = tensor(_phibar(len(keys)), ideal)
    consumed = parse_expr(f"<{_CHANNEL_NAME[kind]}:tau>")
    return TwirlResult(f"absolutize-{kind}", _keyed(branches), target,
                       _branch_distance(branches, ideal.matrix), consumed, consumed,
                       parse_expr(f"<{_CHANNEL_NAME[kind]}>"),
                       qp_state=_keyed(qp_branches) if keep_env else None,
                       details={"kind": kind, "d": d, "input_distance": input_distance,
                                "intertwining_error": err, "key_dim": len(keys), "env": env},
                       branches=branches, qp_branches=qp_branches)


def product_residual(state: StateSpec, labels) -> float:
    """|| s^{XQ} - s^X (x) s^Q ||_1 with X = ``labels`` and Q the rest."""
    labels = list(labels)
    missing = [l for l in labels if l not in state.labels]
    if missing:
        raise UnknownLabel(f"labels {missing} not present in {list(state.labels)}")
    rest = [l for l in state.labels if l not in labels]
    if not rest:
        return 0.0
    s = permute(state, labels + rest)
    prod = tensor(partial_trace(s, labels), partial_trace(s, rest))
    return trace_norm(s.matrix - prod.matrix)


def check_decoupling(result: SimResult, labels=(KEY_A, KEY_B), mode: str = "incoherent") -> float:
    """Decoupling residual of the classical registers ``labels``.

    ``incoherent`` uses the output (environments discarded); ``coherent``
    uses the environment-kept state and so needs a run with ``keep_env``.
    For a twirl and the key registers the block-diagonal form is used.
    """
    if mode not in ("incoherent", "coherent"):
        raise UnknownKind(f"unknown decoupling mode {mode!r}")
    if mode == "coherent" and result.qp_state is None:
        raise ValueError("coherent decoupling needs a run with keep_env=True")
    state = result.output if mode == "incoherent" else result.qp_state
    if isinstance(result, TwirlResult) and sorted(labels) == sorted((KEY_A, KEY_B)):
        return _branch_residual(result.branches if mode == "incoherent" else result.qp_branches)
    return product_residual(state, labels)

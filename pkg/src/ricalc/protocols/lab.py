"""Two-party laboratory: a labeled global state with per-label ownership.

Every local operation checks that the acting party owns all labels it
touches. Unit resources are the only way labels change hands, and each
invocation is entered in a ledger so that the resources a protocol really
consumed can be compared with what it declares.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..algebra.expr import ResourceExpr, unit
from ..errors import OwnershipError, UnknownKind
from ..quantum.layout import SystemLayout
from ..quantum.objects import ChannelSpec, IsometrySpec, StateSpec
from ..quantum.ops import apply, partial_trace, permute, stinespring, tensor
from ..quantum.standard import max_entangled_vector

ALICE, BOB, REF, ENV = "Alice", "Bob", "Ref", "Env"
_UNIT_CHANNELS = ("cbit", "qubit", "cobit")
_UNIT_STATES = ("ebit", "rbit")


def dephasing_channel(d: int, label_in="X", label_out="X") -> ChannelSpec:
    kraus = []
    for x in range(d):
        k = np.zeros((d, d), dtype=complex)
        k[x, x] = 1
        kraus.append(k)
    return ChannelSpec(SystemLayout((label_in,), (d,)), SystemLayout((label_out,), (d,)), kraus)


def copy_isometry(d: int, label_in="X", keep="X", copy="Y") -> IsometrySpec:
    """|x> -> |x>|x> (the coherent channel when ``copy`` goes to the receiver)."""
    v = np.zeros((d * d, d), dtype=complex)
    for x in range(d):
        v[x * d + x, x] = 1
    return IsometrySpec(SystemLayout((label_in,), (d,)), SystemLayout((keep, copy), (d, d)), v)


def controlled_unitary(dc: int, unitaries, control="C", target="T") -> IsometrySpec:
    """sum_x |x><x| (x) U_x on (control, target)."""
    dt = unitaries[0].shape[0]
    m = np.zeros((dc * dt, dc * dt), dtype=complex)
    for x in range(dc):
        m[x * dt:(x + 1) * dt, x * dt:(x + 1) * dt] = unitaries[x]
    lay = SystemLayout((control, target), (dc, dt))
    return IsometrySpec(lay, lay, m)


class Lab:
    """Global state shared by Alice, Bob, a reference and the environment.

    With ``keep_env`` every noisy operation is replaced by its Stinespring
    isometry and the environment is kept (the QP picture); otherwise
    environments are traced out immediately (the QQ picture).
    """

    def __init__(self, state: StateSpec | None, owners: dict, keep_env: bool = False):
        self.state = state
        self.owners = dict(owners)
        self.keep_env = keep_env
        self.ledger: dict = {}
        self._env_count = 0
        if state is not None and set(self.owners) != set(state.labels):
            raise OwnershipError("every label needs exactly one owner")

    # -- bookkeeping -----------------------------------------------------
    def _charge(self, kind: str, amount=1):
        self.ledger[kind] = self.ledger.get(kind, Fraction(0)) + Fraction(amount)

    def consumed(self) -> ResourceExpr:
        return ResourceExpr({unit(k): v for k, v in self.ledger.items()})

    def _check_owner(self, party: str, labels):
        for l in labels:
            if l not in self.owners:
                raise OwnershipError(f"label {l!r} does not exist")
            if self.owners[l] != party:
                raise OwnershipError(f"{party} does not own {l!r} (owner: {self.owners[l]})")

    def _new_env(self) -> str:
        self._env_count += 1
        return f"E{self._env_count}"

    def _apply(self, op, targets, out_labels, owner_of_outputs):
        if isinstance(op, ChannelSpec) and self.keep_env and op.n_kraus > 1:
            env = self._new_env()
            op = stinespring(op, env)
            out_labels = list(out_labels) + [env]
            owner_of_outputs = list(owner_of_outputs) + [ENV]
        self.state = apply(op, self.state, targets, out_labels)
        for l in targets:
            del self.owners[l]
        for l, p in zip(out_labels, owner_of_outputs):
            self.owners[l] = p

    def add(self, state: StateSpec, owners: dict):
        """Bring in a state that is not a counted resource (inputs, local ancillas)."""
        if set(owners) != set(state.labels):
            raise OwnershipError("every new label needs an owner")
        self.state = state if self.state is None else tensor(self.state, state)
        self.owners.update(owners)

    # -- free local operations -------------------------------------------
    def local(self, party: str, op, targets, out_labels=None):
        targets = [targets] if isinstance(targets, str) else list(targets)
        self._check_owner(party, targets)
        out_labels = list(out_labels) if out_labels is not None else list(op.out_layout.labels)
        clash = set(out_labels) & (set(self.owners) - set(targets))
        if clash:
            raise OwnershipError(f"labels {sorted(clash)} already exist")
        self._apply(op, targets, out_labels, [party] * len(out_labels))

    def unitary(self, party: str, u: np.ndarray, target: str):
        d = u.shape[0]
        lay = SystemLayout((target,), (d,))
        self.local(party, IsometrySpec(lay, lay, u), [target], [target])

    def controlled(self, party: str, control: str, target: str, unitaries):
        dc = self.state.layout.dim(control)
        op = controlled_unitary(dc, unitaries, control, target)
        self.local(party, op, [control, target], [control, target])

    def measure(self, party: str, label: str):
        """Complete dephasing in the computational basis (result stays in place)."""
        d = self.state.layout.dim(label)
        self.local(party, dephasing_channel(d, label, label), [label], [label])

    def prepare(self, party: str, state: StateSpec):
        self.add(state, {l: party for l in state.labels})

    # -- counted resources -----------------------------------------------
    def invoke(self, kind: str, source: str, dest: str):
        """Use one unit channel from Alice's ``source`` to Bob's new ``dest``."""
        if kind not in _UNIT_CHANNELS:
            raise UnknownKind(f"unknown unit channel {kind!r}")
        self._check_owner(ALICE, [source])
        d = self.state.layout.dim(source)
        if d != 2:
            raise UnknownKind("unit channels carry one qubit or bit")
        if kind == "qubit":
            lay_in, lay_out = SystemLayout((source,), (2,)), SystemLayout((dest,), (2,))
            self._apply(IsometrySpec(lay_in, lay_out, np.eye(2)), [source], [dest], [BOB])
        elif kind == "cbit":
            self._apply(dephasing_channel(2, source, dest), [source], [dest], [BOB])
        else:
            self._apply(copy_isometry(2, source, source, dest), [source], [source, dest],
                        [ALICE, BOB])
        self._charge(kind)

    def transmit(self, op, source: str, out_labels, out_owners):
        """Send Alice's ``source`` through a channel that is not a unit resource.

        The channel's outputs go to ``out_owners`` (Bob, or Alice for a
        feedback output). Nothing is entered in the ledger; callers account
        for such channels themselves.
        """
        self._check_owner(ALICE, [source])
        self._apply(op, [source], list(out_labels), list(out_owners))

    def share(self, kind: str, a_label: str, b_label: str):
        """Append one ebit (Phi_2) or one rbit (Phibar_2)."""
        if kind == "ebit":
            st = StateSpec.from_vector(SystemLayout((a_label, b_label), (2, 2)),
                                       max_entangled_vector(2))
        elif kind == "rbit":
            st = StateSpec(SystemLayout((a_label, b_label), (2, 2)), np.diag([.5, 0, 0, .5]))
        else:
            raise UnknownKind(f"unknown unit state {kind!r}")
        self.add(st, {a_label: ALICE, b_label: BOB})
        self._charge(kind)

    def share_state(self, kind: str, state: StateSpec, owners: dict, amount):
        """Append a counted resource state worth ``amount`` units of ``kind``."""
        self.add(state, owners)
        self._charge(kind, amount)

    # -- read-out --------------------------------------------------------
    def discard(self, labels):
        keep = [l for l in self.state.labels if l not in set(labels)]
        self.state = partial_trace(self.state, keep)
        for l in labels:
            del self.owners[l]

    def view(self, labels, include_env: bool = False) -> StateSpec:
        """Restriction to ``labels`` (in that order), optionally with all envs."""
        labels = list(labels)
        if include_env:
            labels += [l for l in self.state.labels if self.owners[l] == ENV]
        return partial_trace(self.state, labels)

    def env_labels(self) -> list[str]:
        return [l for l in self.state.labels if self.owners[l] == ENV]

    def ordered(self, labels) -> StateSpec:
        return permute(self.state, labels)

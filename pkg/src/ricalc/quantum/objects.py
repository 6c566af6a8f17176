"""Immutable value types for states, channels, isometries and instruments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import DimensionMismatch, InvalidState, NotIsometry, NotTracePreserving
from .layout import SystemLayout

TOL = 1e-10


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.setflags(write=False)
    return arr


def _as_layout(layout) -> SystemLayout:
    if isinstance(layout, SystemLayout):
        return layout
    if isinstance(layout, dict):
        return SystemLayout.from_dict(layout)
    return SystemLayout.of(*layout)


@dataclass(frozen=True, eq=False)
class StateSpec:
    """Density operator on a labeled layout.

    The matrix is symmetrized on construction and eigenvalues in
    ``[-1e-10, 0)`` are clamped to zero; anything more negative is rejected.
    """

    layout: SystemLayout
    matrix: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        layout = _as_layout(self.layout)
        object.__setattr__(self, "layout", layout)
        m = np.asarray(self.matrix, dtype=complex)
        n = layout.total
        if m.shape != (n, n):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match layout {layout}")
        if self.validate:
            if np.max(np.abs(m - m.conj().T), initial=0.0) > 1e-8:
                raise InvalidState("matrix is not Hermitian")
            m = (m + m.conj().T) / 2
            tr = np.trace(m).real
            if abs(tr - 1) > TOL:
                raise InvalidState(f"trace is {tr}, expected 1")
            w, v = np.linalg.eigh(m)
            if w[0] < -TOL:
                raise InvalidState(f"minimum eigenvalue {w[0]:.3e} is negative")
            if w[0] < 0:
                w = np.clip(w, 0, None)
                m = (v * w) @ v.conj().T
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_vector(cls, layout, psi) -> "StateSpec":
        psi = np.asarray(psi, dtype=complex).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls(layout, np.outer(psi, psi.conj()))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.layout.labels

    @property
    def dims(self) -> tuple[int, ...]:
        return self.layout.dims

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.purity - 1) < tol

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def relabel(self, mapping: dict) -> "StateSpec":
        return StateSpec(self.layout.rename(mapping), self.matrix, validate=False)

    def __repr__(self):
        return f"StateSpec{self.layout}"


def _check_kraus_shapes(kraus, din, dout):
    for k in kraus:
        if k.shape != (dout, din):
            raise DimensionMismatch(
                f"Kraus operator shape {k.shape} does not match ({dout}, {din})")


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    """Completely positive map in Kraus form, trace preserving unless ``cp_only``."""

    in_layout: SystemLayout
    out_layout: SystemLayout
    kraus: tuple
    cp_only: bool = False

    def __post_init__(self):
        inl, outl = _as_layout(self.in_layout), _as_layout(self.out_layout)
        object.__setattr__(self, "in_layout", inl)
        object.__setattr__(self, "out_layout", outl)
        kraus = tuple(_frozen(k) for k in self.kraus)
        if not kraus:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        _check_kraus_shapes(kraus, inl.total, outl.total)
        object.__setattr__(self, "kraus", kraus)
        gram = sum(k.conj().T @ k for k in kraus)
        eye = np.eye(inl.total)
        if self.cp_only:
            if np.linalg.eigvalsh((eye - gram + (eye - gram).conj().T) / 2)[0] < -TOL:
                raise NotTracePreserving("sum of K^dag K exceeds the identity")
        elif np.max(np.abs(gram - eye)) > TOL:
            raise NotTracePreserving("sum of K^dag K differs from the identity")

    @property
    def n_kraus(self) -> int:
        return len(self.kraus)

    def relabel(self, in_map=None, out_map=None) -> "ChannelSpec":
        return ChannelSpec(self.in_layout.rename(in_map or {}),
                           self.out_layout.rename(out_map or {}), self.kraus, self.cp_only)

    def __repr__(self):
        return f"ChannelSpec{self.in_layout}->{self.out_layout}[{self.n_kraus} Kraus]"


@dataclass(frozen=True, eq=False)
class IsometrySpec:
    """Isometry V with V^dag V = I."""

    in_layout: SystemLayout
    out_layout: SystemLayout
    matrix: np.ndarray

    def __post_init__(self):
        inl, outl = _as_layout(self.in_layout), _as_layout(self.out_layout)
        object.__setattr__(self, "in_layout", inl)
        object.__setattr__(self, "out_layout", outl)
        v = _frozen(self.matrix)
        if v.shape != (outl.total, inl.total):
            raise DimensionMismatch(f"isometry shape {v.shape} does not match layouts")
        if np.max(np.abs(v.conj().T @ v - np.eye(inl.total))) > TOL:
            raise NotIsometry("V^dag V differs from the identity")
        object.__setattr__(self, "matrix", v)

    @property
    def kraus(self) -> tuple:
        return (self.matrix,)

    def as_channel(self) -> ChannelSpec:
        return ChannelSpec(self.in_layout, self.out_layout, (self.matrix,))

    def relabel(self, in_map=None, out_map=None) -> "IsometrySpec":
        return IsometrySpec(self.in_layout.rename(in_map or {}),
                            self.out_layout.rename(out_map or {}), self.matrix)

    def __repr__(self):
        return f"IsometrySpec{self.in_layout}->{self.out_layout}"


@dataclass(frozen=True, eq=False)
class InstrumentSpec:
    """Ordered list of CP maps (each a Kraus list) summing to a CPTP map."""

    in_layout: SystemLayout
    out_layout: SystemLayout
    branches: tuple

    def __post_init__(self):
        inl, outl = _as_layout(self.in_layout), _as_layout(self.out_layout)
        object.__setattr__(self, "in_layout", inl)
        object.__setattr__(self, "out_layout", outl)
        branches = tuple(tuple(_frozen(k) for k in b) for b in self.branches)
        if not branches:
            raise DimensionMismatch("an instrument needs at least one branch")
        for b in branches:
            _check_kraus_shapes(b, inl.total, outl.total)
        gram = sum(k.conj().T @ k for b in branches for k in b)
        if np.max(np.abs(gram - np.eye(inl.total))) > TOL:
            raise NotTracePreserving("instrument branches do not sum to a CPTP map")
        object.__setattr__(self, "branches", branches)

    @property
    def n_outcomes(self) -> int:
        return len(self.branches)

    def branch_channel(self, x: int) -> ChannelSpec:
        return ChannelSpec(self.in_layout, self.out_layout, self.branches[x], cp_only=True)

    def total_channel(self) -> ChannelSpec:
        return ChannelSpec(self.in_layout, self.out_layout,
                           tuple(k for b in self.branches for k in b))

    def __repr__(self):
        return f"InstrumentSpec{self.in_layout}->{self.out_layout}[{self.n_outcomes} outcomes]"


def layout(*pairs: tuple[str, int]) -> SystemLayout:
    """Shorthand: ``layout(("A", 2), ("B", 2))``."""
    return SystemLayout.of(*pairs)


def kraus_list(ops: Sequence) -> tuple:
    return tuple(np.asarray(k, dtype=complex) for k in ops)

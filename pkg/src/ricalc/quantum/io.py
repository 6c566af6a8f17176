"""JSON encoding of states and channels.

States: ``{"labels": [{"name": "A", "dim": 2}, ...], "matrix": [[[re, im], ...], ...]}``.
Channels: ``{"kraus": [matrix, ...]}`` with optional ``"in_labels"`` and
``"out_labels"`` layouts (defaults ``A'`` -> ``B``).
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import DimensionMismatch
from .layout import SystemLayout
from .objects import ChannelSpec, StateSpec


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except ValueError as exc:
        raise DimensionMismatch(f"ragged matrix: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise DimensionMismatch("matrix entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_json(s: StateSpec) -> dict:
    return {"labels": s.layout.to_json(), "matrix": matrix_to_json(s.matrix)}


def state_from_json(obj) -> StateSpec:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    return StateSpec(SystemLayout.from_json(obj["labels"]), matrix_from_json(obj["matrix"]))


def channel_to_json(c: ChannelSpec) -> dict:
    return {"in_labels": c.in_layout.to_json(), "out_labels": c.out_layout.to_json(),
            "kraus": [matrix_to_json(k) for k in c.kraus]}


def channel_from_json(obj) -> ChannelSpec:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    kraus = [matrix_from_json(k) for k in obj["kraus"]]
    if not kraus:
        raise DimensionMismatch("empty Kraus list")
    dout, din = kraus[0].shape
    inl = (SystemLayout.from_json(obj["in_labels"]) if "in_labels" in obj
           else SystemLayout(("A'",), (din,)))
    outl = (SystemLayout.from_json(obj["out_labels"]) if "out_labels" in obj
            else SystemLayout(("B",), (dout,)))
    return ChannelSpec(inl, outl, kraus)


def load_state(path) -> StateSpec:
    with open(path) as fh:
        return state_from_json(json.load(fh))


def load_channel(path) -> ChannelSpec:
    with open(path) as fh:
        return channel_from_json(json.load(fh))

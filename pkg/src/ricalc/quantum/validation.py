"""Input-coercion helpers used at public API boundaries."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from ..errors import DimensionMismatch, OverlappingGroups, UnknownLabel
from .layout import SystemLayout
from .objects import ChannelSpec, IsometrySpec, StateSpec


def check_state(obj, layout=None) -> StateSpec:
    """Coerce ``obj`` (StateSpec, matrix or state vector) into a StateSpec.

    Raw arrays need a ``layout``; one-dimensional arrays are read as kets.
    """
    if isinstance(obj, StateSpec):
        if layout is not None and _as_layout(layout) != obj.layout:
            raise DimensionMismatch(f"expected layout {layout}, got {obj.layout}")
        return obj
    if layout is None:
        raise DimensionMismatch("a layout is required to interpret a raw array")
    arr = np.asarray(obj, dtype=complex)
    layout = _as_layout(layout)
    if arr.ndim == 1:
        return StateSpec.from_vector(layout, arr)
    return StateSpec(layout, arr)


def check_channel(obj) -> ChannelSpec:
    if isinstance(obj, ChannelSpec):
        return obj
    if isinstance(obj, IsometrySpec):
        return obj.as_channel()
    raise TypeError(f"expected ChannelSpec or IsometrySpec, got {type(obj).__name__}")


def check_same_layout(a: StateSpec, b: StateSpec) -> None:
    if a.layout != b.layout:
        raise DimensionMismatch(f"layouts differ: {a.layout} vs {b.layout}")


def check_groups(s: StateSpec, groups: Iterable[Iterable[str]]) -> list[tuple[str, ...]]:
    """Validate label groups: known labels, pairwise disjoint."""
    out = []
    seen = set()
    for g in groups:
        g = (g,) if isinstance(g, str) else tuple(g)
        for label in g:
            if label not in s.layout:
                raise UnknownLabel(f"unknown label {label!r}; have {list(s.labels)}")
            if label in seen:
                raise OverlappingGroups(f"label {label!r} appears in more than one group")
            seen.add(label)
        out.append(g)
    return out


def _as_layout(layout) -> SystemLayout:
    if isinstance(layout, SystemLayout):
        return layout
    if isinstance(layout, dict):
        return SystemLayout.from_dict(layout)
    return SystemLayout.of(*layout)

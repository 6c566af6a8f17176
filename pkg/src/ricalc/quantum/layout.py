"""Labeled multipartite system layouts."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, DuplicateLabel, UnknownLabel

MAX_TOTAL_DIM = 4096


@dataclass(frozen=True)
class SystemLayout:
    """Ordered subsystem labels with their dimensions.

    Matrices over a layout use row-major Kronecker order, so the first label
    is the most significant index.
    """

    labels: tuple[str, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(str(l) for l in self.labels)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dims", dims)
        if len(labels) != len(dims):
            raise DimensionMismatch("labels and dims differ in length")
        if len(set(labels)) != len(labels):
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise DuplicateLabel(f"duplicate labels: {dup}")
        if any(d < 1 for d in dims):
            raise DimensionMismatch(f"dimensions must be positive, got {dims}")
        if prod(dims) > MAX_TOTAL_DIM:
            raise DimensionMismatch(
                f"total dimension {prod(dims)} exceeds the limit {MAX_TOTAL_DIM}")

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "SystemLayout":
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def from_dict(cls, mapping) -> "SystemLayout":
        return cls(tuple(mapping), tuple(mapping.values()))

    @property
    def total(self) -> int:
        return prod(self.dims)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.labels

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown label {label!r}; have {list(self.labels)}") from None

    def dim(self, label: str) -> int:
        return self.dims[self.index(label)]

    def dim_of(self, labels: Iterable[str]) -> int:
        return prod(self.dim(l) for l in labels)

    def check_labels(self, labels: Iterable[str]) -> None:
        for l in labels:
            self.index(l)

    def subset(self, labels: Sequence[str]) -> "SystemLayout":
        return SystemLayout(tuple(labels), tuple(self.dim(l) for l in labels))

    def without(self, labels: Iterable[str]) -> "SystemLayout":
        drop = set(labels)
        self.check_labels(drop)
        keep = [l for l in self.labels if l not in drop]
        return self.subset(keep)

    def concat(self, other: "SystemLayout") -> "SystemLayout":
        return SystemLayout(self.labels + other.labels, self.dims + other.dims)

    def rename(self, mapping: dict) -> "SystemLayout":
        return SystemLayout(tuple(mapping.get(l, l) for l in self.labels), self.dims)

    def to_json(self) -> list:
        return [{"name": l, "dim": d} for l, d in zip(self.labels, self.dims)]

    @classmethod
    def from_json(cls, items) -> "SystemLayout":
        return cls(tuple(i["name"] for i in items), tuple(int(i["dim"]) for i in items))

    def __str__(self):
        return "(" + ", ".join(f"{l}:{d}" for l, d in zip(self.labels, self.dims)) + ")"

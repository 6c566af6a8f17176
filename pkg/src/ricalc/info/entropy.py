"""Von Neumann entropies and the derived information quantities (bits)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import UnknownKind
from ..quantum.objects import StateSpec
from ..quantum.ops import reduced_matrix
from ..quantum.validation import check_groups

EIG_ZERO = 1e-12

KINDS = ("H", "Hcond", "Imutual", "Icoh", "Icmi")
_ARITY = {"H": 1, "Hcond": 2, "Imutual": 2, "Icoh": 2, "Icmi": 3}


def entropy_of_spectrum(w: np.ndarray) -> float:
    w = np.asarray(w, dtype=float)
    w = w[w > EIG_ZERO]
    return float(-np.sum(w * np.log2(w)))


def von_neumann(m: np.ndarray) -> float:
    """Entropy in bits of a density matrix; eigenvalues below 1e-12 count as zero."""
    return entropy_of_spectrum(np.linalg.eigvalsh(m))


def subsystem_entropy(s: StateSpec, labels: Iterable[str]) -> float:
    """H of the restriction of ``s`` to ``labels`` (0 for the empty set)."""
    wanted = set(labels)
    s.layout.check_labels(wanted)
    labels = [l for l in s.labels if l in wanted]
    if not labels:
        return 0.0
    if len(labels) == len(s.labels):
        return von_neumann(s.matrix)
    idx = [s.layout.index(l) for l in labels]
    return von_neumann(reduced_matrix(s.matrix, s.dims, idx))


class EntropyCache:
    """Memoizes subsystem entropies of a single state."""

    def __init__(self, state: StateSpec):
        self.state = state
        self._cache: dict[frozenset, float] = {}

    def __call__(self, labels) -> float:
        key = frozenset(labels)
        if key not in self._cache:
            self._cache[key] = subsystem_entropy(self.state, key)
        return self._cache[key]


def quantity_from_entropies(kind: str, groups: Sequence[frozenset], h) -> float:
    """Evaluate an information quantity given an entropy oracle ``h(labels)``."""
    g = [frozenset(x) for x in groups]
    if kind == "H":
        return h(g[0])
    if kind == "Hcond":
        a, b = g
        return h(a | b) - h(b)
    if kind == "Imutual":
        a, b = g
        return h(a) + h(b) - h(a | b)
    if kind == "Icoh":
        a, b = g
        return h(b) - h(a | b)
    if kind == "Icmi":
        a, b, x = g
        return h(a | x) + h(b | x) - h(a | b | x) - h(x)
    raise UnknownKind(f"unknown quantity kind {kind!r}")


_SYMBOLS = {"H": "H({0})", "Hcond": "H({0}|{1})", "Imutual": "I({0};{1})",
            "Icoh": "I({0}>{1})", "Icmi": "I({0};{1}|{2})"}


@dataclass(frozen=True)
class EntropyReport:
    """Value of one information quantity, in bits."""

    kind: str
    groups: tuple[tuple[str, ...], ...]
    value: float

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self.kind].format(*("".join(g) for g in self.groups))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "groups": [list(g) for g in self.groups],
                "quantity": self.symbol, "value": self.value}


def entropy(s: StateSpec, kind: str, *groups) -> EntropyReport:
    """Compute ``kind`` on disjoint label ``groups`` of ``s``.

    ``kind`` is one of H, Hcond (H(A|B)), Imutual (I(A;B)), Icoh (I(A>B))
    and Icmi (I(A;B|X)).

    >>> from ricalc.quantum import standard_object
    >>> round(entropy(standard_object("Phi", 2), "Imutual", "A", "B").value, 12)
    2.0
    """
    if kind not in _ARITY:
        raise UnknownKind(f"unknown quantity kind {kind!r}; expected one of {KINDS}")
    if len(groups) != _ARITY[kind]:
        raise ValueError(f"{kind} takes {_ARITY[kind]} groups, got {len(groups)}")
    checked = check_groups(s, groups)
    value = quantity_from_entropies(kind, checked, EntropyCache(s))
    return EntropyReport(kind, tuple(checked), float(value))


def conditional_entropy(s, a, b) -> float:
    return entropy(s, "Hcond", a, b).value


def mutual_information(s, a, b) -> float:
    return entropy(s, "Imutual", a, b).value


def coherent_information(s, a, b) -> float:
    return entropy(s, "Icoh", a, b).value


def conditional_mutual_information(s, a, b, x) -> float:
    return entropy(s, "Icmi", a, b, x).value


def check_trip_identity(s: StateSpec, x, a, b) -> float:
    """Residual of I(X;AB) = H(A) + I(A>BX) - I(A;B) + I(X;B)."""
    x, a, b = (frozenset(g) for g in check_groups(s, [x, a, b]))
    h = EntropyCache(s)
    lhs = quantity_from_entropies("Imutual", [x, a | b], h)
    rhs = (h(a) + quantity_from_entropies("Icoh", [a, b | x], h)
           - quantity_from_entropies("Imutual", [a, b], h)
           + quantity_from_entropies("Imutual", [x, b], h))
    return abs(lhs - rhs)


def report_for_groups(s: StateSpec, groups: Sequence[Sequence[str]]) -> list[EntropyReport]:
    """All standard quantities for one, two or three groups (used by the CLI)."""
    out = [entropy(s, "H", g) for g in groups]
    if len(groups) >= 2:
        a, b = groups[0], groups[1]
        out += [entropy(s, "Hcond", a, b), entropy(s, "Imutual", a, b),
                entropy(s, "Icoh", a, b)]
    if len(groups) == 3:
        out.append(entropy(s, "Icmi", groups[0], groups[1], groups[2]))
    if len(groups) > 3:
        raise ValueError("at most three groups are supported")
    return out

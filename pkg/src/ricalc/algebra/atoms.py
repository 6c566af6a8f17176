"""Entropic atoms and their expansion into subsystem entropies."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from ..errors import OverlappingGroups, ParseError, UnknownKind

LABEL_RE = re.compile(r"[A-Z][a-z0-9]*(?:_[A-Z][a-z0-9]*)?'*")

KIND_ORDER = {"H": 0, "Hcond": 1, "Imutual": 2, "Icoh": 3, "Icmi": 4}
ARITY = {"H": 1, "Hcond": 2, "Imutual": 2, "Icoh": 2, "Icmi": 3}
#: kinds that are nonnegative for the states the derivations use
NONNEG_KINDS = frozenset({"H", "Hcond", "Imutual", "Icmi"})


def split_labels(text: str) -> frozenset:
    """Tokenize a concatenated group like ``EE'`` or ``BX_B`` into labels."""
    text = text.replace(",", "").replace(" ", "")
    labels = []
    pos = 0
    while pos < len(text):
        m = LABEL_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot read a subsystem label at {text[pos:]!r}")
        labels.append(m.group())
        pos = m.end()
    if not labels:
        raise ParseError("empty label group")
    if len(set(labels)) != len(labels):
        raise ParseError(f"repeated label in group {text!r}")
    return frozenset(labels)


def group_str(g: Iterable[str]) -> str:
    return "".join(sorted(g))


def _as_group(g) -> frozenset:
    if isinstance(g, str):
        return split_labels(g)
    return frozenset(g)


@dataclass(frozen=True)
class EntropicAtom:
    """A symbolic entropic quantity evaluated on the state named by ``tag``."""

    kind: str
    groups: tuple
    tag: str

    def __post_init__(self):
        if self.kind not in ARITY:
            raise UnknownKind(f"unknown atom kind {self.kind!r}")
        groups = tuple(_as_group(g) for g in self.groups)
        if len(groups) != ARITY[self.kind]:
            raise ParseError(f"{self.kind} takes {ARITY[self.kind]} groups")
        seen = set()
        for g in groups:
            if not g:
                raise ParseError("empty label group")
            if seen & g:
                raise OverlappingGroups(f"groups of {self.kind} overlap")
            seen |= g
        if self.kind == "Imutual":
            groups = tuple(sorted(groups, key=group_str))
        elif self.kind == "Icmi":
            groups = tuple(sorted(groups[:2], key=group_str)) + groups[2:]
        object.__setattr__(self, "groups", groups)

    @property
    def labels(self) -> frozenset:
        return frozenset().union(*self.groups)

    @property
    def nonneg(self) -> bool:
        return self.kind in NONNEG_KINDS

    def expansion(self) -> dict:
        """Linear combination of subsystem entropies, ``{frozenset: int}``."""
        g = self.groups
        terms: list[tuple[frozenset, int]]
        if self.kind == "H":
            terms = [(g[0], 1)]
        elif self.kind == "Hcond":
            terms = [(g[0] | g[1], 1), (g[1], -1)]
        elif self.kind == "Imutual":
            terms = [(g[0], 1), (g[1], 1), (g[0] | g[1], -1)]
        elif self.kind == "Icoh":
            terms = [(g[1], 1), (g[0] | g[1], -1)]
        else:
            a, b, x = g
            terms = [(a | x, 1), (b | x, 1), (a | b | x, -1), (x, -1)]
        out: dict = {}
        for s, c in terms:
            out[s] = out.get(s, 0) + c
        return {s: c for s, c in out.items() if c}

    def conditioned(self, given: frozenset) -> "EntropicAtom":
        """Same quantity conditioned on the classical register ``given``."""
        g = self.groups
        if given & self.labels:
            raise OverlappingGroups("conditioning register already used by the atom")
        if self.kind == "H":
            return EntropicAtom("Hcond", (g[0], given), self.tag)
        if self.kind == "Hcond":
            return EntropicAtom("Hcond", (g[0], g[1] | given), self.tag)
        if self.kind == "Imutual":
            return EntropicAtom("Icmi", (g[0], g[1], given), self.tag)
        if self.kind == "Icoh":
            return EntropicAtom("Icoh", (g[0], g[1] | given), self.tag)
        return EntropicAtom("Icmi", (g[0], g[1], g[2] | given), self.tag)

    def rename(self, labels: dict | None = None, tags: dict | None = None) -> "EntropicAtom":
        labels = labels or {}
        groups = []
        for grp in self.groups:
            new = set()
            for l in grp:
                tgt = labels.get(l, l)
                new |= _as_group(tgt) if isinstance(tgt, str) else set(tgt)
            groups.append(frozenset(new))
        return EntropicAtom(self.kind, tuple(groups), (tags or {}).get(self.tag, self.tag))

    def sort_key(self):
        return (self.tag, KIND_ORDER[self.kind], str(self))

    def __str__(self):
        g = [group_str(x) for x in self.groups]
        if self.kind == "H":
            body = f"H({g[0]})"
        elif self.kind == "Hcond":
            body = f"H({g[0]}|{g[1]})"
        elif self.kind == "Imutual":
            body = f"I({g[0]};{g[1]})"
        elif self.kind == "Icoh":
            body = f"Icoh({g[0]}>{g[1]})"
        else:
            body = f"I({g[0]};{g[1]}|{g[2]})"
        return f"{body}@{self.tag}"

    __repr__ = __str__


def atom(kind: str, *groups, tag: str) -> EntropicAtom:
    return EntropicAtom(kind, tuple(groups), tag)

"""State contexts, declared facts and the induced identity basis.

A state context records structural facts about the state behind a tag.
The only structural fact needed by the derivations is purity, possibly
conditional on a classical register: ``pure(A,B,E)`` means the state on
ABE is pure, ``pure(A',B,E,E'|X)`` means every branch of the classical
register X is pure on A'BEE'. Both induce equalities between subsystem
entropies, H(S ∪ C) = H((P \\ S) ∪ C), which generate the identity basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..errors import ContextConflict
from .atoms import EntropicAtom, group_str
from .coefficient import Coefficient, as_fraction

CONST = ("", frozenset({"#"}))  # coordinate of the rational part


@dataclass(frozen=True)
class StateContext:
    tag: str
    pure: frozenset
    given: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pure", frozenset(self.pure))
        object.__setattr__(self, "given", frozenset(self.given))
        if self.pure & self.given:
            raise ContextConflict("conditioning register overlaps the pure systems")

    @property
    def labels(self) -> frozenset:
        return self.pure | self.given

    def reduce(self, subset: frozenset):
        """Canonical representative of H(subset), or None when it vanishes."""
        return _reduce(self.pure, self.given, subset)

    def rename(self, labels=None, tags=None) -> "StateContext":
        def mp(g):
            out = set()
            for l in g:
                t = (labels or {}).get(l, l)
                out |= _split(t)
            return frozenset(out)
        return StateContext((tags or {}).get(self.tag, self.tag), mp(self.pure), mp(self.given))

    def __str__(self):
        inner = ",".join(sorted(self.pure))
        if self.given:
            inner += "|" + ",".join(sorted(self.given))
        return f"{self.tag} = pure({inner})"


def _split(t):
    from .atoms import split_labels
    return split_labels(t) if isinstance(t, str) else frozenset(t)


def _subset_key(s: frozenset):
    return (len(s), sorted(s))


@lru_cache(maxsize=None)
def _reduce(pure, given, subset):
    if not subset:
        return None
    if given <= subset and (subset - given) <= pure:
        s = subset - given
        comp = pure - s
        rep = min(s, comp, key=_subset_key)
        out = rep | given
        return out if out else None
    return subset


@dataclass(frozen=True)
class Fact:
    """Declared numeric bound ``coef > bound`` or ``coef >= bound``."""

    coef: Coefficient
    op: str
    bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.op not in (">", ">="):
            raise ValueError("fact operator must be '>' or '>='")
        object.__setattr__(self, "bound", as_fraction(self.bound))

    @property
    def strict(self) -> bool:
        return self.op == ">"

    def rename(self, labels=None, tags=None) -> "Fact":
        return Fact(self.coef.rename(labels, tags), self.op, self.bound)

    def __str__(self):
        from .coefficient import fraction_str
        return f"{self.coef} {self.op} {fraction_str(self.bound)}"


@dataclass(frozen=True)
class IdentityBasis:
    """Contexts and facts in force, plus optional resource-level rewrites.

    ``rewrites`` maps a resource symbol to an equal ResourceExpr (used e.g.
    to normalize modulo the coherent communication identity).
    """

    contexts: tuple = ()
    facts: tuple = ()
    rewrites: tuple = field(default=(), compare=False)

    def __post_init__(self):
        seen = {}
        for c in self.contexts:
            if c.tag in seen and seen[c.tag] != c:
                raise ContextConflict(f"conflicting contexts for tag {c.tag!r}")
            seen[c.tag] = c
        object.__setattr__(self, "contexts", tuple(sorted(seen.values(), key=lambda c: c.tag)))
        facts = []
        for f in self.facts:
            if f not in facts:
                facts.append(f)
        object.__setattr__(self, "facts", tuple(sorted(facts, key=str)))

    def context(self, tag: str):
        for c in self.contexts:
            if c.tag == tag:
                return c
        return None

    def merge(self, *others: "IdentityBasis") -> "IdentityBasis":
        ctx = list(self.contexts)
        facts = list(self.facts)
        rw = list(self.rewrites)
        for o in others:
            ctx += o.contexts
            facts += o.facts
            rw += [r for r in o.rewrites if r not in rw]
        return IdentityBasis(tuple(ctx), tuple(facts), tuple(rw))

    def with_rewrites(self, rewrites) -> "IdentityBasis":
        return IdentityBasis(self.contexts, self.facts, tuple(rewrites))

    def rename(self, labels=None, tags=None) -> "IdentityBasis":
        return IdentityBasis(tuple(c.rename(labels, tags) for c in self.contexts),
                             tuple(f.rename(labels, tags) for f in self.facts), self.rewrites)

    def reduce(self, tag: str, subset: frozenset):
        c = self.context(tag)
        if c is None:
            return subset if subset else None
        return c.reduce(subset)

    def canonical(self, coef: Coefficient) -> frozenset:
        """Coordinates of ``coef`` modulo the identities (hashable)."""
        return _canonical(self.contexts, coef)

    def equal(self, a: Coefficient, b: Coefficient) -> bool:
        return self.canonical(a - b) == frozenset()

    def is_zero(self, a: Coefficient) -> bool:
        return self.canonical(a) == frozenset()

    def __str__(self):
        return "; ".join([str(c) for c in self.contexts] + [str(f) for f in self.facts])


EMPTY_BASIS = IdentityBasis()


@lru_cache(maxsize=200_000)
def _canonical(contexts, coef: Coefficient) -> frozenset:
    ctx = {c.tag: c for c in contexts}
    vec: dict = {}
    if coef.const:
        vec[CONST] = coef.const
    for a, q in coef.atoms:
        c = ctx.get(a.tag)
        for s, k in a.expansion().items():
            rep = c.reduce(s) if c is not None else s
            if rep is None:
                continue
            key = (a.tag, rep)
            vec[key] = vec.get(key, Fraction(0)) + q * k
    return frozenset((k, v) for k, v in vec.items() if v)


def vector_str(vec) -> str:
    parts = []
    for (tag, s), v in sorted(vec, key=lambda kv: (kv[0][0], _subset_key(kv[0][1]))):
        parts.append(f"{v}*H({group_str(s)})@{tag}" if tag else f"{v}")
    return " + ".join(parts) or "0"

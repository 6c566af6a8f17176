"""Exact coefficients: a rational plus a rational combination of entropic atoms."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import DegreeOverflow
from .atoms import EntropicAtom


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Coefficient:
    """Immutable element of Q + Q-span(atoms)."""

    __slots__ = ("const", "atoms", "_hash")

    def __init__(self, const=0, atoms=None):
        self.const = as_fraction(const)
        merged: dict = {}
        for a, q in (atoms.items() if isinstance(atoms, dict) else (atoms or ())):
            q = as_fraction(q)
            merged[a] = merged.get(a, Fraction(0)) + q
        self.atoms = tuple(sorted(((a, q) for a, q in merged.items() if q),
                                  key=lambda t: t[0].sort_key()))
        self._hash = None

    @classmethod
    def of(cls, x) -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        if isinstance(x, EntropicAtom):
            return cls(0, {x: 1})
        return cls(x)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = Coefficient.of(other)
        return Coefficient(self.const + other.const, list(self.atoms) + list(other.atoms))

    __radd__ = __add__

    def __neg__(self):
        return Coefficient(-self.const, [(a, -q) for a, q in self.atoms])

    def __sub__(self, other):
        return self + (-Coefficient.of(other))

    def __rsub__(self, other):
        return Coefficient.of(other) - self

    def __mul__(self, other):
        other = Coefficient.of(other)
        if self.atoms and other.atoms:
            raise DegreeOverflow(f"product of entropic coefficients ({self}) * ({other})")
        if other.atoms:
            self, other = other, self
        q = other.const
        return Coefficient(self.const * q, [(a, c * q) for a, c in self.atoms])

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self * (Fraction(1) / as_fraction(q))

    # -- predicates -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.atoms

    @property
    def is_syntactic_zero(self) -> bool:
        return self.const == 0 and not self.atoms

    @property
    def tags(self) -> frozenset:
        return frozenset(a.tag for a, _ in self.atoms)

    def atom_set(self) -> frozenset:
        return frozenset(a for a, _ in self.atoms)

    def written_nonneg(self) -> bool:
        """Nonnegative by inspection: every part has a nonnegative sign and kind."""
        return self.const >= 0 and all(q > 0 and a.nonneg for a, q in self.atoms)

    def rename(self, labels=None, tags=None) -> "Coefficient":
        return Coefficient(self.const, [(a.rename(labels, tags), q) for a, q in self.atoms])

    def map_atoms(self, fn) -> "Coefficient":
        return Coefficient(self.const, [(fn(a), q) for a, q in self.atoms])

    def evaluate(self, atom_value) -> float:
        return float(self.const) + sum(float(q) * atom_value(a) for a, q in self.atoms)

    # -- identity ---------------------------------------------------------
    def _key(self):
        return (self.const, self.atoms)

    def __eq__(self, other):
        if not isinstance(other, Coefficient):
            try:
                other = Coefficient.of(other)
            except TypeError:
                return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # -- printing ---------------------------------------------------------
    def __str__(self):
        parts = []
        if self.const or not self.atoms:
            parts.append((self.const, None))
        parts += [(q, a) for a, q in self.atoms]
        out = ""
        for i, (q, a) in enumerate(parts):
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if a is None:
                body = fraction_str(mag)
            elif mag == 1:
                body = str(a)
            else:
                body = f"{fraction_str(mag)} {a}"
            if i == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Coefficient({self})"

    def as_prefix(self) -> str:
        """Text used in front of a resource symbol (empty for 1)."""
        if self == 1:
            return ""
        if self.is_rational:
            return fraction_str(self.const) + " "
        if not self.const and len(self.atoms) == 1:
            return str(self) + " "
        return f"({self}) "


ZERO = Coefficient(0)
ONE = Coefficient(1)

"""Standard states and channels, named noise models and Weyl operators."""

from __future__ import annotations

import numpy as np

from ..errors import OutOfRange, UnknownKind
from .layout import SystemLayout
from .objects import ChannelSpec, IsometrySpec, StateSpec

STANDARD_KINDS = ("Phi", "Phibar", "tau", "id", "idbar", "Delta", "Deltabar")


def ket(i: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[i] = 1
    return v


def max_entangled_vector(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex).ravel() / np.sqrt(d)


def standard_object(kind: str, d: int):
    """Build one of the standard objects in the computational basis.

    Kinds: ``Phi`` (maximally entangled, on A B), ``Phibar`` (maximally
    correlated classical, on X_A X_B), ``tau`` (maximally mixed, on A),
    ``id`` (A' -> B), ``idbar`` (complete dephasing, X_A' -> X_B),
    ``Delta`` (coherent channel A' -> A B) and ``Deltabar`` (classical copy,
    X_A' -> X_A X_B).
    """
    if d < 2:
        raise OutOfRange("dimension must be at least 2")
    if kind == "Phi":
        # entries set directly so they are exactly 1/d
        m = np.zeros((d * d, d * d))
        idx = [x * d + x for x in range(d)]
        m[np.ix_(idx, idx)] = 1 / d
        return StateSpec(SystemLayout(("A", "B"), (d, d)), m)
    if kind == "Phibar":
        m = np.zeros((d * d, d * d))
        for x in range(d):
            m[x * d + x, x * d + x] = 1 / d
        return StateSpec(SystemLayout(("X_A", "X_B"), (d, d)), m)
    if kind == "tau":
        return StateSpec(SystemLayout(("A",), (d,)), np.eye(d) / d)
    if kind == "id":
        return IsometrySpec(SystemLayout(("A'",), (d,)), SystemLayout(("B",), (d,)), np.eye(d))
    if kind == "idbar":
        kraus = [np.outer(ket(x, d), ket(x, d)) for x in range(d)]
        return ChannelSpec(SystemLayout(("X_A'",), (d,)), SystemLayout(("X_B",), (d,)), kraus)
    if kind == "Delta":
        v = np.zeros((d * d, d), dtype=complex)
        for x in range(d):
            v[x * d + x, x] = 1
        return IsometrySpec(SystemLayout(("A'",), (d,)), SystemLayout(("A", "B"), (d, d)), v)
    if kind == "Deltabar":
        kraus = []
        for x in range(d):
            k = np.zeros((d * d, d), dtype=complex)
            k[x * d + x, x] = 1
            kraus.append(k)
        return ChannelSpec(SystemLayout(("X_A'",), (d,)), SystemLayout(("X_A", "X_B"), (d, d)),
                           kraus)
    raise UnknownKind(f"unknown standard object {kind!r}; expected one of {STANDARD_KINDS}")


# Pauli matrices
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def shift(d: int) -> np.ndarray:
    """Cyclic shift |x> -> |x+1 mod d>."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock(d: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def weyl(a: int, b: int, d: int) -> np.ndarray:
    """Discrete Weyl operator X^a Z^b."""
    return np.linalg.matrix_power(shift(d), a) @ np.linalg.matrix_power(clock(d), b)


def weyl_operators(d: int) -> list[np.ndarray]:
    """All d^2 Weyl operators, indexed by x = a*d + b."""
    return [weyl(a, b, d) for a in range(d) for b in range(d)]


def _qubit_channel(kraus, in_label="A'", out_label="B", dout=2):
    return ChannelSpec(SystemLayout((in_label,), (2,)), SystemLayout((out_label,), (dout,)), kraus)


def depolarizing(p: float) -> ChannelSpec:
    """rho -> (1-p) rho + p I/2, Kraus {sqrt(1-3p/4) I, sqrt(p/4) X, Y, Z}."""
    _check_prob(p)
    return _qubit_channel([np.sqrt(1 - 3 * p / 4) * I2, np.sqrt(p / 4) * X,
                           np.sqrt(p / 4) * Y, np.sqrt(p / 4) * Z])


def dephasing(p: float) -> ChannelSpec:
    """Kraus {sqrt(1-p) I, sqrt(p) Z}."""
    _check_prob(p)
    return _qubit_channel([np.sqrt(1 - p) * I2, np.sqrt(p) * Z])


def erasure(p: float) -> ChannelSpec:
    """Qubit erasure; output dimension 3 with flag state |2>."""
    _check_prob(p)
    k0 = np.sqrt(1 - p) * np.vstack([I2, np.zeros((1, 2))])
    k1 = np.zeros((3, 2), dtype=complex)
    k1[2, 0] = np.sqrt(p)
    k2 = np.zeros((3, 2), dtype=complex)
    k2[2, 1] = np.sqrt(p)
    return _qubit_channel([k0, k1, k2], dout=3)


def amplitude_damping(g: float) -> ChannelSpec:
    """Kraus {[[1,0],[0,sqrt(1-g)]], [[0,sqrt(g)],[0,0]]}."""
    _check_prob(g)
    return _qubit_channel([np.array([[1, 0], [0, np.sqrt(1 - g)]]),
                           np.array([[0, np.sqrt(g)], [0, 0]])])


def identity_channel(d: int = 2) -> ChannelSpec:
    return ChannelSpec(SystemLayout(("A'",), (d,)), SystemLayout(("B",), (d,)), [np.eye(d)])


NAMED_CHANNELS = {
    "depolarizing": depolarizing,
    "dephasing": dephasing,
    "erasure": erasure,
    "amplitude-damping": amplitude_damping,
}


def named_channel(spec: str) -> ChannelSpec:
    """Parse ``name:param`` (e.g. ``depolarizing:0.1``); ``identity`` takes no parameter."""
    name, _, arg = spec.partition(":")
    if name == "identity":
        return identity_channel(int(arg) if arg else 2)
    if name not in NAMED_CHANNELS:
        raise UnknownKind(f"unknown channel {name!r}; expected one of "
                          f"{sorted(NAMED_CHANNELS) + ['identity']}")
    try:
        value = float(arg)
    except ValueError:
        raise OutOfRange(f"channel {name!r} needs a numeric parameter") from None
    return NAMED_CHANNELS[name](value)


def _check_prob(p):
    if not 0 <= p <= 1:
        raise OutOfRange(f"parameter {p} outside [0, 1]")

"""Nonnegativity certificates for coefficients.

A coefficient is certified nonnegative when, modulo the identity basis, it
is a nonnegative rational combination of

* the constant 1,
* whitelisted atoms H(S), I(S;T), I(S;T|U) over the labels of each tag,
* declared facts ``c >= b`` (as ``c - b``) and ``c > b``.

The combination is found with a linear program and then re-verified in
exact rational arithmetic, so the floating-point solver is never trusted.
Strict positivity additionally requires positive weight on the constant or
on a strict fact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import numpy as np
from scipy.optimize import linprog

from .atoms import EntropicAtom
from .basis import CONST, IdentityBasis, _canonical
from .coefficient import Coefficient


def _nonempty_subsets(labels):
    labels = sorted(labels)
    for r in range(1, len(labels) + 1):
        for c in combinations(labels, r):
            yield frozenset(c)


@lru_cache(maxsize=256)
def _tag_generators(contexts, tag: str, labels: frozenset):
    gens = []
    for s in _nonempty_subsets(labels):
        gens.append(EntropicAtom("H", (s,), tag))
    lab = sorted(labels)
    seen = set()
    for assign in product(range(4), repeat=len(lab)):
        parts = [frozenset(l for l, a in zip(lab, assign) if a == k) for k in (1, 2, 3)]
        s, t, u = parts
        if not s or not t or group_key(s) > group_key(t):
            continue
        key = (s, t, u)
        if key in seen:
            continue
        seen.add(key)
        if u:
            gens.append(EntropicAtom("Icmi", (s, t, u), tag))
        else:
            gens.append(EntropicAtom("Imutual", (s, t), tag))
    vecs = {}
    for g in gens:
        v = _canonical(contexts, Coefficient(0, {g: 1}))
        if v and v not in vecs:
            vecs[v] = g
    return tuple(vecs.items())


def group_key(g):
    return (len(g), sorted(g))


def _labels_by_tag(coef: Coefficient, basis: IdentityBasis) -> dict:
    out: dict = {}
    for a, _ in coef.atoms:
        out.setdefault(a.tag, set()).update(a.labels)
    for f in basis.facts:
        for a, _ in f.coef.atoms:
            out.setdefault(a.tag, set()).update(a.labels)
    for tag in list(out):
        ctx = basis.context(tag)
        if ctx is not None:
            out[tag].update(ctx.labels)
    return {t: frozenset(v) for t, v in out.items()}


def _exact_solve(cols, target, coords):
    """Exact solution of sum_j x_j cols[j] = target restricted to given columns."""
    n = len(cols)
    rows = [[c.get(k, Fraction(0)) for c in cols] + [target.get(k, Fraction(0))]
            for k in coords]
    piv_cols = []
    r = 0
    for j in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][j]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                f = rows[i][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(j)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(piv_cols):
        x[j] = rows[i][-1]
    return x


@lru_cache(maxsize=100_000)
def _certify(contexts, facts, coef: Coefficient, strict: bool) -> bool:
    basis = IdentityBasis(contexts, facts)
    target = dict(_canonical(contexts, coef))
    if not strict and not target:
        return True
    # generators: (vector dict, is_strict)
    gens: list[tuple[dict, bool]] = [({CONST: Fraction(1)}, True)]
    for f in facts:
        v = dict(_canonical(contexts, f.coef))
        if f.bound:
            v[CONST] = v.get(CONST, Fraction(0)) - f.bound
            if not v[CONST]:
                del v[CONST]
        if v:
            gens.append((v, f.strict))
    for tag, labels in sorted(_labels_by_tag(coef, basis).items()):
        for vec, _g in _tag_generators(contexts, tag, labels):
            gens.append((dict(vec), False))
    coords = sorted({k for v, _ in gens for k in v} | set(target),
                    key=lambda k: (k[0], len(k[1]), sorted(k[1])))
    if not set(target) <= {k for v, _ in gens for k in v}:
        return False
    idx = {k: i for i, k in enumerate(coords)}
    a = np.zeros((len(coords), len(gens)))
    for j, (v, _) in enumerate(gens):
        for k, q in v.items():
            a[idx[k], j] = float(q)
    b = np.zeros(len(coords))
    for k, q in target.items():
        b[idx[k]] = float(q)
    strict_cols = np.array([s for _, s in gens])
    if strict:
        c = -strict_cols.astype(float)
        bounds = [(0, 1) if s else (0, None) for s in strict_cols]
    else:
        c = np.zeros(len(gens))
        bounds = [(0, None)] * len(gens)
    res = linprog(c, A_eq=a, b_eq=b, bounds=bounds, method="highs")
    if res.status != 0:
        return False
    x = res.x
    if strict and -res.fun < 1e-9:
        return False
    support = [j for j in range(len(gens)) if x[j] > 1e-10]
    # first try rounding the LP solution
    xs = {j: Fraction(x[j]).limit_denominator(10**6) for j in support}
    if _verify(gens, xs, target, strict):
        return True
    sol = _exact_solve([gens[j][0] for j in support], target, coords)
    if sol is None:
        return False
    xs = dict(zip(support, sol))
    return _verify(gens, xs, target, strict)


def _verify(gens, xs, target, strict) -> bool:
    if any(v < 0 for v in xs.values()):
        return False
    acc: dict = {}
    for j, w in xs.items():
        for k, q in gens[j][0].items():
            acc[k] = acc.get(k, Fraction(0)) + w * q
    acc = {k: v for k, v in acc.items() if v}
    if acc != target:
        return False
    if strict:
        return any(w > 0 and gens[j][1] for j, w in xs.items())
    return True


def is_nonneg(coef, basis: IdentityBasis) -> bool:
    """True when ``coef >= 0`` is certified under ``basis``."""
    coef = Coefficient.of(coef)
    if coef.written_nonneg():
        return True
    return _certify(basis.contexts, basis.facts, coef, False)


def is_positive(coef, basis: IdentityBasis) -> bool:
    """True when ``coef > 0`` is certified under ``basis``."""
    coef = Coefficient.of(coef)
    if coef.is_rational:
        return coef.const > 0
    if coef.const > 0 and coef.written_nonneg():
        return True
    return _certify(basis.contexts, basis.facts, coef, True)


def is_nonpos(coef, basis: IdentityBasis) -> bool:
    return is_nonneg(-Coefficient.of(coef), basis)


def is_negative(coef, basis: IdentityBasis) -> bool:
    return is_positive(-Coefficient.of(coef), basis)

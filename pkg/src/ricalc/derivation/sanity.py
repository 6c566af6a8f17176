"""Numeric replay of derivations on concrete desk-scale states.

Every tag is bound to a random state that satisfies its context (pure, or
pure in every branch of a classical register). Each step's recorded and
recomputed conclusions, each transitivity's middle terms, and the final
conclusion against the target must then evaluate to the same numbers. This
tests the symbolic identity basis against direct entropy computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra.evaluate import evaluate, evaluate_coefficient
from ..algebra.expr import ResourceExpr
from ..quantum.layout import SystemLayout
from ..quantum.objects import StateSpec
from ..quantum.random import random_probs, random_vector
from .proof import Proof, check_proof

STEP_TOL = 1e-9


def _labels_by_tag(proof: Proof) -> dict:
    out: dict = {}

    def visit(ri):
        for e in (ri.lhs, ri.rhs):
            for _, c in e.terms:
                for a, _ in c.atoms:
                    out.setdefault(a.tag, set()).update(a.labels)
        for f in ri.basis.facts:
            for a, _ in f.coef.atoms:
                out.setdefault(a.tag, set()).update(a.labels)
        for ctx in ri.basis.contexts:
            out.setdefault(ctx.tag, set()).update(ctx.labels)

    for st in proof.steps:
        visit(st.conclusion)
    visit(proof.target)
    return out


def _contexts(proof: Proof) -> dict:
    out = {}
    for st in proof.steps:
        for c in st.conclusion.basis.contexts:
            out[c.tag] = c
    return out


def _pure_vector(n: int, dim: int, rng, bias: float | None) -> np.ndarray:
    """Random pure vector; with ``bias`` set, a perturbed Bell pair on the
    first two systems (keeps coherent information positive)."""
    d = dim ** n
    v = random_vector(d, rng)
    if bias is None or n < 2:
        return v
    bell = np.zeros(d, dtype=complex)
    rest = dim ** (n - 2)
    for i in range(dim):
        bell[(i * dim + i) * rest] = 1 / np.sqrt(dim)
    w = bell + bias * v
    return w / np.linalg.norm(w)


def concrete_state(labels, context=None, rng=None, dim: int = 2,
                   bias: float | None = None) -> StateSpec:
    """Random state on ``labels`` (qubits) honouring a purity context."""
    rng = np.random.default_rng(rng)
    labels = sorted(labels)
    if context is None:
        d = dim ** len(labels)
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = g @ g.conj().T
        return StateSpec(SystemLayout(tuple(labels), (dim,) * len(labels)), m / np.trace(m).real)
    pure = sorted(context.pure)
    given = sorted(context.given)
    extra = sorted(set(labels) - context.labels)
    if extra:
        raise ValueError(f"labels {extra} lie outside the context of {context.tag!r}")
    order = given + pure
    lay = SystemLayout(tuple(order), (dim,) * len(order))
    dp = dim ** len(pure)
    if not given:
        return StateSpec.from_vector(lay, _pure_vector(len(pure), dim, rng, bias))
    nx = dim ** len(given)
    p = random_probs(nx, rng)
    m = np.zeros((nx * dp, nx * dp), dtype=complex)
    for x in range(nx):
        v = _pure_vector(len(pure), dim, rng, bias)
        m[x * dp:(x + 1) * dp, x * dp:(x + 1) * dp] = p[x] * np.outer(v, v.conj())
    return StateSpec(lay, m)


def _facts_hold(proof: Proof, bindings) -> bool:
    facts = {f for st in proof.steps for f in st.conclusion.basis.facts}
    for f in facts:
        v = evaluate_coefficient(f.coef, bindings)
        if (v <= float(f.bound)) if f.strict else (v < float(f.bound) - STEP_TOL):
            return False
    return True


def bind_proof(proof: Proof, seed: int = 0, tries: int = 200) -> tuple[dict, bool]:
    """Bind every tag; retry until declared facts hold (if they can)."""
    rng = np.random.default_rng(seed)
    labels, ctxs = _labels_by_tag(proof), _contexts(proof)
    bindings = {}
    for i in range(tries):
        bias = None if i % 2 == 0 else float(rng.uniform(0.05, 1.0))
        bindings = {t: concrete_state(ls, ctxs.get(t), rng, bias=bias)
                    for t, ls in sorted(labels.items())}
        if _facts_hold(proof, bindings):
            return bindings, True
    return bindings, False


def _gap(a: ResourceExpr, b: ResourceExpr, bindings) -> float:
    va, vb = evaluate(a, bindings), evaluate(b, bindings)
    gap = 0.0
    for k in set(va) | set(vb):
        x, y = va.get(k, 0.0), vb.get(k, 0.0)
        if not (np.isfinite(x) and np.isfinite(y)):
            if x != y:
                return float("inf")
            continue
        gap = max(gap, abs(x - y))
    return gap


def _net(ri, bindings) -> dict:
    """Finite part of lhs - rhs, per symbol text (o-terms contribute nothing)."""
    out: dict = {}
    for sign, e in ((1.0, ri.lhs), (-1.0, ri.rhs)):
        for k, v in evaluate(ResourceExpr(e.terms), bindings).items():
            out[k] = out.get(k, 0.0) + sign * v
    return out


def _combine(*parts) -> dict:
    out: dict = {}
    for w, d in parts:
        for k, v in d.items():
            out[k] = out.get(k, 0.0) + w * v
    return out


def _expected_net(st, prem, bindings):
    """Numeric image of the rule on the premises' net vectors (linear rules only)."""
    nets = [_net(p, bindings) for p in prem]
    r = st.rule
    if r in ("addition", "transitivity"):
        return _combine(*((1.0, n) for n in nets))
    if r == "scaling":
        from ..algebra.grammar import parse_coefficient
        z = evaluate_coefficient(parse_coefficient(str(st.instantiation["factor"])), bindings)
        return _combine((z, nets[0]))
    if r in ("cancellation", "o-removal", "antisymmetry", "assume", "closure"):
        return nets[0]
    if r == "derandomize":
        return {k: v for k, v in nets[0].items() if k != "[cc]"}
    if r == "rule-I":
        rate = nets[0].get("[c->c:tau]", 0.0)
        return _combine((1.0, nets[0]), (1.0, {"[c->c:tau]": -rate, "[q->q]": rate / 2,
                                                "[qq]": -rate / 2}))
    if r == "incoherent-rule-I":
        rate = nets[0].get("[c->c:tau]", 0.0)
        return _combine((1.0, nets[0]), (1.0, {"[cc]": -rate}))
    if r == "rule-O":
        rate = -nets[0].get("[c->c]", 0.0)
        return _combine((1.0, nets[0]), (1.0, {"[c->c]": rate, "[qq]": -rate / 2,
                                                "[q->q]": -rate / 2}))
    return None


def _dict_gap(a: dict, b: dict) -> float:
    return max((abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in set(a) | set(b)), default=0.0)


@dataclass
class SanityReport:
    name: str
    max_gap: float
    facts_hold: bool
    per_step: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.max_gap < STEP_TOL


def numeric_replay(proof: Proof, seed: int = 0) -> SanityReport:
    res = check_proof(proof)
    if not res.ok:
        raise ValueError(f"proof {proof.name!r} does not check: {res}")
    bindings, facts_ok = bind_proof(proof, seed)
    done = res.recomputed
    gaps = []
    for st in proof.steps:
        got = done[st.id]
        g = max(_gap(st.conclusion.lhs, got.lhs, bindings),
                _gap(st.conclusion.rhs, got.rhs, bindings))
        prem = [done[p] for p in st.premises]
        if st.rule == "transitivity":
            g = max(g, _gap(prem[0].rhs, prem[1].lhs, bindings))
        exp = _expected_net(st, prem, bindings)
        if exp is not None:
            g = max(g, _dict_gap(exp, _net(st.conclusion, bindings)))
        gaps.append((st.id, st.rule, g))
    last = done[proof.steps[-1].id]
    g = max(_gap(proof.target.lhs, last.lhs, bindings), _gap(proof.target.rhs, last.rhs, bindings))
    gaps.append(("target", "match", g))
    return SanityReport(proof.name, max(x[2] for x in gaps), facts_ok, gaps)

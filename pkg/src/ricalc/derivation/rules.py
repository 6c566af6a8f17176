"""Inference rules of the resource calculus.

Every rule is a pure function ``(premises, instantiation) -> conclusion`` on
ResourceInequality values; the instantiation is a JSON-friendly dict of
strings in the text grammar. Rules never search: a proof script states
exactly which rule is applied to which premises and how.
"""

from __future__ import annotations


from ..algebra.atoms import split_labels
from ..algebra.basis import IdentityBasis, StateContext
from ..algebra.certify import is_nonneg, is_positive
from ..algebra.coefficient import Coefficient
from ..algebra.expr import (CBIT, EBIT, PURE_UNIT_KINDS, QUBIT, RBIT, TAU_OF, ResourceExpr,
                            ResourceInequality, ResourceSymbol, expr_equal, expr_leq,
                            negative_normal_form, normalize, unit)
from ..algebra.grammar import (parse_coefficient, parse_expr, parse_fact, parse_ri,
                               parse_symbol)
from ..errors import MissingSideCondition, SchemaMismatch, UndischargedFlag
from .axioms import lookup

_FLAG_RANK = {"none": 0, "incoherent": 1, "coherent": 2}
_CBIT_TAU = unit("cbit_tau")
_UNTAU = {v: k for k, v in TAU_OF.items()}


# -- helpers ----------------------------------------------------------------

def _need(cond, msg, err=SchemaMismatch):
    if not cond:
        raise err(msg)


def _arity(premises, n, rule):
    _need(len(premises) == n, f"{rule} takes {n} premise(s), got {len(premises)}")


def _get(inst, key, rule):
    if key not in inst:
        raise SchemaMismatch(f"{rule}: instantiation is missing {key!r}")
    return inst[key]


def _finish(lhs, rhs, relation, flags, basis) -> ResourceInequality:
    if relation == ">=s" and not any(s.kind == "protected"
                                     for s in lhs.symbols | rhs.symbols):
        relation = ">="
    return ResourceInequality(normalize(lhs, basis), normalize(rhs, basis), relation,
                              tuple(flags.items()) if isinstance(flags, dict) else flags,
                              basis)


def _combine_relations(rels) -> str:
    rels = set(rels)
    if rels == {"="}:
        return "="
    if rels <= {"=", ">=s"}:
        return ">=s"
    return ">="


def _weakest_flags(premises) -> dict:
    """Per-(side, symbol) flag that every premise mentioning the term supports."""
    out: dict = {}
    for p in premises:
        fm = p.flag_map
        for side, expr in (("lhs", p.lhs), ("rhs", p.rhs)):
            for s in expr.symbols:
                if not s.is_classical:
                    continue
                f = fm.get((side, s), "none")
                key = (side, s)
                if key not in out or _FLAG_RANK[f] < _FLAG_RANK[out[key]]:
                    out[key] = f
    return out


def _side_flags(p: ResourceInequality, side: str) -> dict:
    return {k: f for k, f in p.flag_map.items() if k[0] == side}


def _covered_by(small: ResourceExpr, big: ResourceExpr, basis) -> bool:
    """Is ``small <= z * big`` for some rational z > 0 (termwise positivity)?"""
    for s, c in small.terms:
        if s in big.inf_terms:
            continue
        if not is_positive(big.coef(s), basis):
            return False
    return small.o_terms <= big.symbols and small.inf_terms <= big.inf_terms


def _nonneg_expr(e: ResourceExpr, basis, what):
    for s, c in e.terms:
        _need(is_nonneg(c, basis), f"{what}: coefficient of {s} is not certified nonnegative",
              MissingSideCondition)


def _symbol(x) -> ResourceSymbol:
    return x if isinstance(x, ResourceSymbol) else parse_symbol(x)


# -- structural rules -------------------------------------------------------

def r_axiom(premises, inst):
    _arity(premises, 0, "axiom")
    ax = lookup(_get(inst, "name", "axiom"))
    syms, labels, tags = inst.get("symbols"), inst.get("labels"), inst.get("tags")
    ri = ax.ri
    flags = {(side, s.rename(syms)): f for (side, s), f in ri.flag_map.items()}
    basis = ri.basis.rename(labels, tags)
    return _finish(ri.lhs.rename(syms, labels, tags), ri.rhs.rename(syms, labels, tags),
                   ri.relation, flags, basis)


def r_reflexivity(premises, inst):
    _arity(premises, 0, "reflexivity")
    e = parse_expr(_get(inst, "expr", "reflexivity"))
    return _finish(e, e, "=", {}, IdentityBasis())


def r_assume(premises, inst):
    """Weaken a premise by adding declared facts to its hypotheses."""
    _arity(premises, 1, "assume")
    (p,) = premises
    facts = [parse_fact(t) for t in _get(inst, "facts", "assume")]
    basis = p.basis.merge(IdentityBasis((), tuple(facts)))
    return _finish(p.lhs, p.rhs, p.relation, p.flag_map, basis)


def r_addition(premises, inst):
    _need(len(premises) >= 2, "addition needs at least two premises")
    basis = premises[0].basis.merge(*(p.basis for p in premises[1:]))
    lhs, rhs = ResourceExpr(), ResourceExpr()
    for p in premises:
        lhs, rhs = lhs + p.lhs, rhs + p.rhs
    rel = _combine_relations(p.relation for p in premises)
    return _finish(lhs, rhs, rel, _weakest_flags(premises), basis)


def r_transitivity(premises, inst):
    _arity(premises, 2, "transitivity")
    p1, p2 = premises
    basis = p1.basis.merge(p2.basis)
    _need(expr_equal(p1.rhs, p2.lhs, basis),
          f"transitivity: middle terms differ: {p1.rhs}  vs  {p2.lhs}")
    flags = {**_side_flags(p1, "lhs"), **_side_flags(p2, "rhs")}
    rel = _combine_relations([p1.relation, p2.relation])
    return _finish(p1.lhs, p2.rhs, rel, flags, basis)


def r_scaling(premises, inst):
    _arity(premises, 1, "scaling")
    (p,) = premises
    z = parse_coefficient(str(_get(inst, "factor", "scaling")))
    _need(is_nonneg(z, p.basis), f"scaling factor {z} is not certified nonnegative",
          MissingSideCondition)
    _need(not p.basis.is_zero(z), "scaling by zero is not a derivation step")
    return _finish(p.lhs.scale_unchecked(z), p.rhs.scale_unchecked(z), p.relation,
                   p.flag_map, p.basis)


def r_antisymmetry(premises, inst):
    _arity(premises, 2, "antisymmetry")
    p1, p2 = premises
    basis = p1.basis.merge(p2.basis)
    _need(p1.relation != ">=s" and p2.relation != ">=s", "antisymmetry needs plain relations")
    _need(expr_equal(p1.lhs, p2.rhs, basis) and expr_equal(p1.rhs, p2.lhs, basis),
          "antisymmetry: premises are not converse inequalities")
    return _finish(p1.lhs, p1.rhs, "=", {}, basis)


def r_equality_direction(premises, inst):
    _arity(premises, 1, "equality-direction")
    (p,) = premises
    _need(p.relation == "=", "equality-direction needs an equality")
    if inst.get("reverse", False):
        return _finish(p.rhs, p.lhs, ">=", {}, p.basis)
    return _finish(p.lhs, p.rhs, ">=", {}, p.basis)


def r_equality_substitution(premises, inst):
    """Replace ``factor * a`` by ``factor * b`` on one side, given ``a = b``."""
    _arity(premises, 2, "equality-substitution")
    p, eq = premises
    _need(eq.relation == "=", "equality-substitution needs an equality as second premise")
    basis = p.basis.merge(eq.basis)
    side = _get(inst, "side", "equality-substitution")
    _need(side in ("lhs", "rhs"), "side must be 'lhs' or 'rhs'")
    a, b = (eq.rhs, eq.lhs) if inst.get("reverse", False) else (eq.lhs, eq.rhs)
    z = parse_coefficient(str(inst.get("factor", "1")))
    _need(is_nonneg(z, basis), "substitution factor must be nonnegative", MissingSideCondition)
    za, zb = a.scale_unchecked(z), b.scale_unchecked(z)
    expr = p.lhs if side == "lhs" else p.rhs
    _need(expr_leq(za, ResourceExpr(expr.terms), basis) is True,
          f"equality-substitution: {za} does not occur in {expr}")
    new = ResourceExpr(expr.plain_sub(za).terms, expr.o_terms, expr.inf_terms) + zb
    lhs, rhs = (new, p.rhs) if side == "lhs" else (p.lhs, new)
    flags = {k: f for k, f in p.flag_map.items() if k[0] != side}
    rel = ">=" if p.relation == "=" else p.relation
    return negative_normal_form(_finish(lhs, rhs, rel, flags, basis))


def r_discard(premises, inst):
    """Free disposal: add to the consumed side, drop from the produced side,
    or promote consumed terms to infinite rate."""
    _arity(premises, 1, "discard")
    (p,) = premises
    basis = p.basis
    lhs, rhs = p.lhs, p.rhs
    if inst.get("lhs_add"):
        extra = parse_expr(inst["lhs_add"])
        _nonneg_expr(extra, basis, "discard")
        lhs = lhs + extra
    if inst.get("rhs_remove"):
        drop = parse_expr(inst["rhs_remove"])
        _nonneg_expr(drop, basis, "discard")
        _need(not drop.o_terms and not drop.inf_terms, "discard: only finite terms can be dropped")
        _need(expr_leq(drop, ResourceExpr(rhs.terms), basis) is True,
              f"discard: {drop} is not part of {rhs}")
        rhs = ResourceExpr(rhs.plain_sub(drop).terms, rhs.o_terms, rhs.inf_terms)
    for t in inst.get("to_inf", []):
        s = _symbol(t)
        _need(s in lhs.symbols, f"discard: {s} is not consumed")
        lhs = ResourceExpr(lhs.terms, lhs.o_terms, lhs.inf_terms | {s})
    rel = ">=" if p.relation == "=" else p.relation
    return _finish(lhs, rhs, rel, _side_flags(p, "lhs") | _side_flags(p, "rhs"), basis)


# -- sublinear terms ----------------------------------------------------------

def r_cancellation(premises, inst):
    """a + g >= b + g  gives  a + o g >= b."""
    _arity(premises, 1, "cancellation")
    (p,) = premises
    basis = p.basis
    g = parse_expr(_get(inst, "gamma", "cancellation"))
    _need(not g.o_terms and not g.inf_terms and g.terms, "cancellation: gamma must be finite")
    _nonneg_expr(g, basis, "cancellation")
    for s, _ in g.terms:
        _need(s in p.lhs.symbols and s in p.rhs.symbols,
              f"cancellation: {s} does not occur on both sides")
    lhs = ResourceExpr(p.lhs.plain_sub(g).terms, p.lhs.o_terms | g.symbols, p.lhs.inf_terms)
    rhs = ResourceExpr(p.rhs.plain_sub(g).terms, p.rhs.o_terms, p.rhs.inf_terms)
    rel = ">=" if p.relation == "=" else p.relation
    return negative_normal_form(_finish(lhs, rhs, rel, p.flag_map, basis))


def r_o_removal(premises, inst):
    """a + o g >= b  and  z a >= g  give  a >= b."""
    _arity(premises, 2, "o-removal")
    p, side = premises
    basis = p.basis.merge(side.basis)
    g = _symbol(_get(inst, "symbol", "o-removal"))
    _need(g in p.lhs.o_terms, f"o-removal: o{g} is not consumed by the main premise")
    _need(is_positive(side.rhs.coef(g), basis),
          f"o-removal: side premise does not produce {g} at a certified positive rate",
          MissingSideCondition)
    alpha = ResourceExpr(p.lhs.terms, p.lhs.o_terms - {g}, p.lhs.inf_terms)
    _need(_covered_by(side.lhs, alpha, basis),
          "o-removal: side premise consumes resources outside a multiple of the main one",
          MissingSideCondition)
    return _finish(alpha, p.rhs, p.relation, p.flag_map, basis)


def r_closure(premises, inst):
    """Rates achievable on an open range are achievable at its boundary:
    a strict hypothesis ``c > b`` is relaxed to ``c >= b``."""
    _arity(premises, 1, "closure")
    (p,) = premises
    f = parse_fact(_get(inst, "fact", "closure"))
    _need(f.strict and f in p.basis.facts, f"closure: {f} is not a strict hypothesis")
    facts = tuple(x for x in p.basis.facts if x != f) + (type(f)(f.coef, ">=", f.bound),)
    basis = IdentityBasis(p.basis.contexts, facts, p.basis.rewrites)
    return _finish(p.lhs, p.rhs, p.relation, p.flag_map, basis)


def r_recycle_randomness(premises, inst):
    """Decoupled consumed common randomness can be returned: z[cc] -> o[cc]."""
    _arity(premises, 1, "recycle-randomness")
    (p,) = premises
    _need(RBIT in p.lhs.symbols, "recycle-randomness: no [cc] is consumed")
    _need(p.flag("lhs", RBIT) in ("incoherent", "coherent"),
          "recycle-randomness: consumed [cc] is not decoupled", UndischargedFlag)
    lhs = ResourceExpr([(s, c) for s, c in p.lhs.terms if s != RBIT],
                       p.lhs.o_terms | {RBIT}, p.lhs.inf_terms - {RBIT})
    return _finish(lhs, p.rhs, p.relation, p.flag_map, p.basis)


def r_derandomize(premises, inst):
    """a + z[cc] >= b with b pure and a >= [cc] gives a >= b."""
    _arity(premises, 2, "derandomize")
    p, side = premises
    basis = p.basis.merge(side.basis)
    _need(RBIT in p.lhs.symbols and RBIT not in p.lhs.o_terms,
          "derandomize: no [cc] is consumed at a finite rate (use o-removal)")
    declared = {_symbol(t) for t in inst.get("pure", [])}
    for s in p.rhs.symbols:
        _need(s.kind in PURE_UNIT_KINDS or s in declared,
              f"derandomize: produced resource {s} is not pure", MissingSideCondition)
    alpha = ResourceExpr([(s, c) for s, c in p.lhs.terms if s != RBIT],
                         p.lhs.o_terms - {RBIT}, p.lhs.inf_terms - {RBIT})
    _need(is_positive(side.rhs.coef(RBIT), basis),
          "derandomize: side premise does not produce [cc]", MissingSideCondition)
    _need(_covered_by(side.lhs, alpha, basis),
          "derandomize: side premise consumes resources outside a multiple of the main one",
          MissingSideCondition)
    return _finish(alpha, p.rhs, p.relation, p.flag_map, basis)


# -- coherence rules --------------------------------------------------------

def _tau_cbit_rate(p, rule, allowed):
    _need(_CBIT_TAU in p.lhs.symbols and _CBIT_TAU not in p.lhs.o_terms,
          f"{rule}: no [c->c:tau] is consumed at a finite rate")
    _need(p.flag("lhs", _CBIT_TAU) in allowed,
          f"{rule}: consumed [c->c:tau] lacks the required decoupling flag", UndischargedFlag)
    r = p.lhs.coef(_CBIT_TAU)
    _need(is_nonneg(r, p.basis), f"{rule}: rate is not nonnegative", MissingSideCondition)
    return r


def r_rule_i(premises, inst):
    _arity(premises, 1, "rule-I")
    (p,) = premises
    r = _tau_cbit_rate(p, "rule-I", ("coherent",))
    half = r / 2
    lhs = ResourceExpr([(s, c) for s, c in p.lhs.terms if s != _CBIT_TAU]
                       + [(QUBIT, half)], p.lhs.o_terms, p.lhs.inf_terms)
    rhs = p.rhs + ResourceExpr.of(EBIT, half)
    return _finish(lhs, rhs, p.relation, p.flag_map, p.basis)


def r_incoherent_rule_i(premises, inst):
    _arity(premises, 1, "incoherent-rule-I")
    (p,) = premises
    r = _tau_cbit_rate(p, "incoherent-rule-I", ("incoherent", "coherent"))
    return _finish(p.lhs, p.rhs + ResourceExpr.of(RBIT, r), p.relation,
                   _side_flags(p, "lhs"), p.basis)


def r_rule_o(premises, inst):
    _arity(premises, 1, "rule-O")
    (p,) = premises
    _need(CBIT in p.rhs.symbols and CBIT not in p.rhs.o_terms,
          "rule-O: no [c->c] is produced at a finite rate")
    _need(p.flag("rhs", CBIT) == "coherent",
          "rule-O: produced [c->c] is not coherently decoupled", UndischargedFlag)
    r = p.rhs.coef(CBIT)
    half = r / 2
    rhs = ResourceExpr([(s, c) for s, c in p.rhs.terms if s != CBIT]
                       + [(EBIT, half), (QUBIT, half)], p.rhs.o_terms, p.rhs.inf_terms)
    flags = {k: f for k, f in p.flag_map.items() if k != ("rhs", CBIT)}
    return _finish(p.lhs, rhs, p.relation, flags, p.basis)


def r_absolutize(premises, inst):
    """Swap a unit resource with its maximally-mixed-input version ([x:tau] = [x])."""
    _arity(premises, 1, "absolutize")
    (p,) = premises
    kind = _get(inst, "unit", "absolutize")
    _need(kind in TAU_OF, f"absolutize: unknown unit {kind!r}")
    to = inst.get("to", "tau")
    src, dst = (unit(kind), unit(TAU_OF[kind])) if to == "tau" else \
        (unit(TAU_OF[kind]), unit(kind))
    side = _get(inst, "side", "absolutize")
    _need(side in ("lhs", "rhs"), "side must be 'lhs' or 'rhs'")
    expr = p.lhs if side == "lhs" else p.rhs
    _need(src in expr.symbols, f"absolutize: {src} does not occur on the {side}")
    swap = {src: dst}
    new = expr.map_symbols(lambda s: swap.get(s, s))
    flags = {}
    for (sd, s), f in p.flag_map.items():
        s2 = swap.get(s, s) if sd == side else s
        if s2.is_classical:
            flags[(sd, s2)] = f
    lhs, rhs = (new, p.rhs) if side == "lhs" else (p.lhs, new)
    return _finish(lhs, rhs, p.relation, flags, p.basis)


# -- relative and source resources ------------------------------------------

def _relative(sym, rule, kinds=("dynamic", "protected")):
    s = _symbol(sym)
    _need(s.kind in kinds and s.test, f"{rule}: {s} is not a relative resource")
    return s


def r_relativize(premises, inst):
    _arity(premises, 0, "relativize")
    item = int(_get(inst, "item", "relativize"))
    E = ResourceExpr.of
    if item == 1:
        n = _symbol(_get(inst, "channel", "relativize"))
        _need(n.kind == "dynamic" and n.test is None, "relativize 1: expects <N>")
        rel = ResourceSymbol("dynamic", n.name, _get(inst, "test", "relativize"))
        return _finish(E(n), E(rel), ">=", {}, IdentityBasis())
    if item == 2:
        n = _relative(_get(inst, "resource", "relativize"), "relativize 2")
        out = _symbol(_get(inst, "output", "relativize"))
        _need(out.kind == "static", "relativize 2: output must be a state <name>")
        return _finish(E(n), E(out), ">=", {}, IdentityBasis())
    if item == 3:
        first = _relative(_get(inst, "first", "relativize"), "relativize 3")
        second = _relative(_get(inst, "second", "relativize"), "relativize 3", ("dynamic",))
        comp = _symbol(_get(inst, "composite", "relativize"))
        _need(comp.kind == first.kind and comp.test == first.test,
              "relativize 3: composite must act on the first resource's test state")
        return _finish(E(first) + E(second), E(comp), ">=", {}, IdentityBasis())
    if item == 4:
        st = _symbol(_get(inst, "state", "relativize"))
        ch = _relative(_get(inst, "channel", "relativize"), "relativize 4", ("dynamic",))
        out = _symbol(_get(inst, "output", "relativize"))
        _need(st.kind == "static" and out.kind == "static",
              "relativize 4: state and output must be states")
        return _finish(E(st) + E(ch), E(out), ">=", {}, IdentityBasis())
    if item == 5:
        a = _relative(_get(inst, "from", "relativize"), "relativize 5")
        b = _relative(_get(inst, "to", "relativize"), "relativize 5")
        _need(a.kind == b.kind and a.test == b.test,
              "relativize 5: a reduction keeps the kind and the test state")
        return _finish(E(a), E(b), ">=", {}, IdentityBasis())
    raise SchemaMismatch(f"relativize: unknown item {item}")


def r_convex_split(premises, inst):
    """Average an RI over a classical register known to both parties."""
    _arity(premises, 1, "convex-split")
    (p,) = premises
    given = split_labels(_get(inst, "given", "convex-split"))
    src, dst = _get(inst, "from_tag", "convex-split"), _get(inst, "to_tag", "convex-split")
    syms = inst.get("symbols", {})
    tags = p.lhs.tags() | p.rhs.tags()
    _need(tags == {src}, f"convex-split: all coefficients must refer to tag {src!r}")
    _need(not any(src in f.coef.tags for f in p.basis.facts),
          "convex-split: facts about the averaged state are not averaged")
    ctx = p.basis.context(src)
    labels = frozenset().union(*(a.labels for e in (p.lhs, p.rhs) for _, c in e.terms
                                 for a, _ in c.atoms))
    if ctx is not None:
        labels |= ctx.labels
    _need(not (labels & given), "convex-split: register already occurs in the premise")

    def cond(c: Coefficient) -> Coefficient:
        return c.map_atoms(lambda a: a.conditioned(given).rename(None, {src: dst}))

    lhs = p.lhs.rename(syms).map_coefficients(cond)
    rhs = p.rhs.rename(syms).map_coefficients(cond)
    contexts = [c for c in p.basis.contexts if c.tag != src]
    if ctx is not None:
        contexts.append(StateContext(dst, ctx.pure, ctx.given | given))
    basis = IdentityBasis(tuple(contexts), p.basis.facts, p.basis.rewrites)
    flags = {(sd, s.rename(syms)): f for (sd, s), f in p.flag_map.items()}
    return _finish(lhs, rhs, p.relation, flags, basis)


def r_source_fake(premises, inst):
    """Replace a consumed protected resource by the state it prepares."""
    _arity(premises, 1, "source-fake")
    (p,) = premises
    prot = _symbol(_get(inst, "protected", "source-fake"))
    st = _symbol(_get(inst, "static", "source-fake"))
    _need(prot.kind == "protected" and st.kind == "static", "source-fake: wrong symbol kinds")
    c = p.lhs.coef(prot)
    _need(c.is_rational and c.const == 1, f"source-fake: {prot} must be consumed once")
    _need(not any(s.kind == "protected" and s.test == prot.test for s in p.rhs.symbols),
          "source-fake: the produced resource refers to the source")
    lhs = ResourceExpr([(s, k) for s, k in p.lhs.terms if s != prot] + [(st, 1)],
                       p.lhs.o_terms, p.lhs.inf_terms)
    return _finish(lhs, p.rhs, ">=", p.flag_map, p.basis)


def r_proper_improper(premises, inst):
    _arity(premises, 1, "proper-improper")
    (p,) = premises
    item = int(_get(inst, "item", "proper-improper"))
    if item == 1:
        _need(p.relation == ">=s", "proper-improper 1: expects a source relation")
        return _finish(p.lhs, p.rhs, ">=", p.flag_map, p.basis)
    if item == 2:
        _need(p.relation == ">=", "proper-improper 2: expects a plain relation")
        _need(any(s.kind == "protected" for s, _ in p.lhs.terms),
              "proper-improper 2: no protected resource is consumed")
        st = _symbol(_get(inst, "static", "proper-improper"))
        _need(st.kind == "static", "proper-improper 2: the o-term must be a state")
        lhs = ResourceExpr(p.lhs.terms, p.lhs.o_terms | {st}, p.lhs.inf_terms)
        return _finish(lhs, p.rhs, ">=s", p.flag_map, p.basis)
    raise SchemaMismatch(f"proper-improper: unknown item {item}")


RULES = {
    "axiom": r_axiom,
    "reflexivity": r_reflexivity,
    "assume": r_assume,
    "addition": r_addition,
    "transitivity": r_transitivity,
    "scaling": r_scaling,
    "antisymmetry": r_antisymmetry,
    "equality-direction": r_equality_direction,
    "equality-substitution": r_equality_substitution,
    "discard": r_discard,
    "cancellation": r_cancellation,
    "o-removal": r_o_removal,
    "closure": r_closure,
    "recycle-randomness": r_recycle_randomness,
    "derandomize": r_derandomize,
    "rule-I": r_rule_i,
    "incoherent-rule-I": r_incoherent_rule_i,
    "rule-O": r_rule_o,
    "absolutize": r_absolutize,
    "relativize": r_relativize,
    "convex-split": r_convex_split,
    "source-fake": r_source_fake,
    "proper-improper": r_proper_improper,
}


def apply_rule(kind: str, premises, instantiation: dict | None = None) -> ResourceInequality:
    """Recompute the conclusion of one derivation step."""
    try:
        fn = RULES[kind]
    except KeyError:
        raise SchemaMismatch(f"unknown rule {kind!r}") from None
    prem = [parse_ri(p) if isinstance(p, str) else p for p in premises]
    return fn(prem, dict(instantiation or {}))

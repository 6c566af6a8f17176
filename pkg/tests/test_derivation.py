import json

import numpy as np
import pytest

from ricalc.algebra import (CBIT, ResourceExpr, format_ri, parse_ri, ri_equal)
from ricalc.derivation import (RULES, apply_rule, axiom_db, builtin, builtin_derivations,
                               check_proof, check_proof_json, format_proof_tree, fuzz, lookup,
                               numeric_replay, proof_from_json)
from ricalc.errors import MissingSideCondition, RICalcError, SchemaMismatch

BUILTINS = sorted(builtin_derivations())


# -- axiom database ------------------------------------------------------------

def test_axiom_db_size_and_round_trip():
    db = axiom_db()
    assert len(db) >= 28
    for ax in db:
        assert ri_equal(parse_ri(format_ri(ax.ri)), ax.ri), ax.name


def test_axiom_examples():
    mother = lookup("mother").ri
    assert ri_equal(mother, parse_ri(
        "<rho> + 1/2 I(A;E)@psi [q->q] >= 1/2 I(A;B)@psi [qq] where psi = pure(A,B,E)"))
    ccc = lookup("ccc").ri
    assert ccc.relation == "="
    assert ri_equal(ccc, parse_ri("2[q->qq] = [q->q] + [qq]"))
    hashing = lookup("hashing")
    assert hashing.ri.flag("lhs", CBIT) == "coherent"
    assert hashing.side_conditions
    with pytest.raises(KeyError):
        lookup("no-such-axiom")


# -- rules ---------------------------------------------------------------------

def test_cancellation_keeps_o_term():
    got = apply_rule("cancellation", [parse_ri("[cc] + [qq] >= [c->c] + [qq]")],
                     {"gamma": "[qq]"})
    assert ri_equal(got, parse_ri("[cc] + o[qq] >= [c->c]"))
    with pytest.raises(RICalcError):
        apply_rule("cancellation", [parse_ri("[cc] >= [c->c] + [qq]")], {"gamma": "[qq]"})


def test_o_removal_needs_side_premise():
    main = parse_ri("[cc] + o[qq] >= [c->c]")
    got = apply_rule("o-removal", [main, parse_ri("[cc] >= [qq]")], {"symbol": "[qq]"})
    assert ri_equal(got, parse_ri("[cc] >= [c->c]"))
    with pytest.raises(MissingSideCondition):
        apply_rule("o-removal", [main, parse_ri("[q->q] >= [qq]")], {"symbol": "[qq]"})


def test_transitivity_checks_middle_terms():
    a, b = parse_ri("[q->q] >= [c->c]"), parse_ri("[c->c] >= [cc]")
    assert ri_equal(apply_rule("transitivity", [a, b], {}), parse_ri("[q->q] >= [cc]"))
    with pytest.raises(SchemaMismatch):
        apply_rule("transitivity", [b, a], {})


def test_scaling_refuses_negative_factor():
    with pytest.raises(MissingSideCondition):
        apply_rule("scaling", [parse_ri("[q->q] >= [c->c]")], {"factor": "-1"})


def _well_formed(e: ResourceExpr):
    finite = {s for s, _ in e.terms}
    assert not finite & e.o_terms and not finite & e.inf_terms
    assert all(not c.is_syntactic_zero for _, c in e.terms)


def _tags(ri):
    return ri.lhs.tags() | ri.rhs.tags() | {c.tag for c in ri.basis.contexts}


def test_addition_and_transitivity_closure_on_random_axioms():
    rng = np.random.default_rng(5)
    db = axiom_db()
    for _ in range(200):
        i, j = rng.integers(len(db), size=2)
        p = apply_rule("axiom", [], {"name": db[i].name})
        tags = {t: t + "2" for t in _tags(db[j].ri)}
        q = apply_rule("axiom", [], {"name": db[j].name, "tags": tags})
        got = apply_rule("addition", [p, q], {})
        _well_formed(got.lhs)
        _well_formed(got.rhs)
        try:
            got = apply_rule("transitivity", [p, q], {})
        except RICalcError:
            continue
        _well_formed(got.lhs)
        _well_formed(got.rhs)


def test_rule_table_covers_named_kinds():
    for kind in ("transitivity", "addition", "scaling", "cancellation", "o-removal", "closure",
                 "recycle-randomness", "derandomize", "rule-I", "rule-O",
                 "incoherent-rule-I", "absolutize", "equality-substitution"):
        assert kind in RULES


# -- builtins and the checker --------------------------------------------------

def test_builtin_count():
    assert len(BUILTINS) >= 15


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_checks(name):
    res = check_proof(builtin(name))
    assert res.ok, str(res)


def test_builtin_targets():
    assert ri_equal(builtin("lsd-from-father").target,
                    parse_ri("<N> + o[qq] >= Icoh(R>B)@psi [q->q] where psi = pure(R,B,E)"))
    assert ri_equal(builtin("ccc-identity").target,
                    parse_ri("[q->qq] = 1/2 [q->q] + 1/2 [qq]"))


@pytest.mark.parametrize("name", ["nsd-from-mother", "ccc-identity", "grandmother"])
def test_tampered_half_fails_at_that_step(name):
    d = builtin(name).to_dict()
    idx = next(i for i, s in enumerate(d["steps"]) if "1/2" in s["conclusion"])
    d["steps"][idx]["conclusion"] = d["steps"][idx]["conclusion"].replace("1/2", "1/3", 1)
    res = check_proof_json(json.dumps(d))
    assert not res.ok
    assert res.step_index == idx


def test_proof_json_round_trip_and_errors():
    p = builtin("nsd-from-mother")
    assert check_proof(proof_from_json(p.to_json())).ok
    assert not check_proof_json("{not json").ok
    bad = check_proof_json(json.dumps({"steps": []}))
    assert not bad.ok and "unreadable" in bad.reason
    d = p.to_dict()
    d["steps"][0]["premises"] = ["later"]
    assert not check_proof_json(json.dumps(d)).ok


def test_fuzz_has_no_survivors():
    proofs = [builtin(n) for n in BUILTINS]
    assert fuzz(proofs, n=500, seed=0) == []


def test_format_proof_tree_mentions_every_step():
    p = builtin("ccc-identity")
    text = format_proof_tree(p)
    for st in p.steps:
        assert st.id in text
    assert text.splitlines()[0].startswith(p.name)
    assert text.splitlines()[1].lstrip().startswith(p.steps[-1].id)


@pytest.mark.parametrize("name", BUILTINS)
def test_numeric_replay(name):
    rep = numeric_replay(builtin(name), seed=0)
    assert rep.ok, rep.per_step

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import ptrace, vn_entropy_bits

from ricalc.algebra import (CBIT, COBIT, EBIT, EMPTY_BASIS, QUBIT, Coefficient, ResourceExpr,
                            add, evaluate, expr_equal, expr_leq, format_expr, normalize,
                            parse_coefficient, parse_expr, parse_ri, scale)
from ricalc.derivation import axiom_db, concrete_state
from ricalc.errors import DegreeOverflow, NegativeScale, UnboundTag, UnknownLabel
from ricalc.quantum import StateSpec, SystemLayout, standard_object

PURE_ABE = parse_ri("[qq] >= 0 where psi = pure(A,B,E)").basis
ATOMS = ["H(A)@psi", "H(B)@psi", "I(A;B)@psi", "I(A;E)@psi", "H(A|B)@psi"]
SYMBOLS = [CBIT, QUBIT, EBIT, COBIT]


# -- random expressions --------------------------------------------------------

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonneg = st.fractions(min_value=0, max_value=5, max_denominator=6)


@st.composite
def coefficients(draw):
    c = Coefficient.of(draw(fractions))
    for a in draw(st.lists(st.sampled_from(ATOMS), max_size=2)):
        c = c + parse_coefficient(a) * draw(fractions)
    return c


@st.composite
def expressions(draw):
    terms = draw(st.lists(st.tuples(st.sampled_from(SYMBOLS), coefficients()), max_size=4))
    o = draw(st.sets(st.sampled_from(SYMBOLS), max_size=2))
    return ResourceExpr(terms, o)


@st.composite
def rational_expressions(draw):
    terms = draw(st.lists(st.tuples(st.sampled_from(SYMBOLS), fractions), max_size=4))
    return ResourceExpr(terms)


def same(a, b, basis=EMPTY_BASIS):
    return expr_equal(a, b, basis)


@settings(max_examples=200, deadline=None)
@given(expressions(), expressions(), expressions())
def test_add_associative_and_commutative(a, b, c):
    assert same(add(a, b), add(b, a))
    assert same(add(add(a, b), c), add(a, add(b, c)))
    assert same(add(a, b, PURE_ABE), add(b, a, PURE_ABE), PURE_ABE)


@settings(max_examples=200, deadline=None)
@given(nonneg, nonneg, rational_expressions(), rational_expressions())
def test_scale_distributes(z, w, a, b):
    assert same(scale(z, a + b), add(scale(z, a), scale(z, b)))
    assert same(scale(z + w, a), add(scale(z, a), scale(w, a)))
    assert same(scale(z * w, a), scale(z, scale(w, a)))


@settings(max_examples=1000, deadline=None)
@given(expressions())
def test_normalize_idempotent(a):
    for basis in (EMPTY_BASIS, PURE_ABE):
        once = normalize(a, basis)
        assert normalize(once, basis) == once


@settings(max_examples=200, deadline=None)
@given(expressions())
def test_format_parse_round_trip(a):
    assert parse_expr(format_expr(a)) == a


# -- add -----------------------------------------------------------------------

def test_add_examples():
    got = add(parse_expr("[q->q] + [qq]"), parse_expr("[q->q]"))
    assert got == parse_expr("2[q->q] + [qq]")
    assert add(parse_expr("o[cc]"), parse_expr("o[cc]")) == parse_expr("o[cc]")


def test_add_under_pure_context_gives_entropy():
    half = parse_expr("1/2 I(A;B)@psi [qq]")
    other = parse_expr("1/2 I(A;E)@psi [qq]")
    got = add(half, other, PURE_ABE)
    assert same(got, parse_expr("H(A)@psi [qq]"), PURE_ABE)
    assert not same(half + other, parse_expr("H(A)@psi [qq]"))


# -- scale ---------------------------------------------------------------------

def test_scale_examples():
    e = parse_expr("2[c->c] + [qq]")
    assert scale(Fraction(1, 2), e) == parse_expr("[c->c] + 1/2[qq]")
    iae = parse_coefficient("I(A;E)@psi")
    assert scale(iae, e) == parse_expr("2 I(A;E)@psi [c->c] + I(A;E)@psi [qq]")
    assert scale(0, e).is_empty()
    assert scale(3, parse_expr("o[cc]")) == parse_expr("o[cc]")


def test_scale_errors():
    with pytest.raises(NegativeScale):
        scale(-1, parse_expr("[cc]"))
    with pytest.raises(NegativeScale):
        scale(parse_coefficient("Icoh(A>B)@psi"), parse_expr("[cc]"))
    with pytest.raises(DegreeOverflow):
        scale(parse_coefficient("H(A)@psi"), parse_expr("H(B)@psi [qq]"))


# -- normalize -----------------------------------------------------------------

def test_normalize_coherent_identity_rewrite():
    basis = EMPTY_BASIS.with_rewrites([(COBIT, parse_expr("1/2[q->q] + 1/2[qq]"))])
    e = parse_expr("[q->qq] - 1/2[q->q] - 1/2[qq]")
    assert normalize(e, basis).is_empty()
    assert not normalize(e).is_empty()


def test_difference_leaves_o_term():
    a = parse_expr("[cc]")
    assert a - a == parse_expr("o[cc]")


def test_normalize_pure_identity_vanishes():
    e = parse_expr("H(A)@psi [q->q] - 1/2 I(A;B)@psi [q->q] - 1/2 I(A;E)@psi [q->q]")
    assert normalize(e, PURE_ABE).is_empty()
    assert not normalize(e).is_empty()


# -- expr_leq ------------------------------------------------------------------

def test_expr_leq_examples():
    a = parse_expr("[cc] + 1/2 H(A)@psi [qq]")
    assert expr_leq(a, a) is True
    assert expr_leq(parse_expr("[c->c]"), parse_expr("[q->q]")) is False
    assert expr_leq(parse_expr("[cc]"), parse_expr("2[cc]")) is True
    assert expr_leq(parse_expr("2[cc]"), parse_expr("[cc]")) is False


def test_expr_leq_needs_declared_fact():
    one, big = parse_expr("[qq]"), parse_expr("H(A)@psi [qq]")
    assert expr_leq(one, big) is None
    declared = parse_ri("[qq] >= [cc] where H(A)@psi >= 1").basis
    assert expr_leq(one, big, declared) is True


def test_expr_leq_o_terms_by_containment():
    assert expr_leq(parse_expr("o[cc]"), parse_expr("[cc]")) is True
    assert expr_leq(parse_expr("[cc]"), parse_expr("o[cc]")) is False
    assert expr_leq(parse_expr("1/2 I(A;B)@psi [cc]"), parse_expr("H(A)@psi [cc]"),
                    PURE_ABE) is True


# -- evaluate ------------------------------------------------------------------

def test_evaluate_mother_rhs_on_bell_pair():
    phi = standard_object("Phi", 2)
    assert evaluate(parse_expr("1/2 I(A;B)@psi [qq]"), {"psi": phi}) == \
        pytest.approx({"[qq]": 1.0})


def test_evaluate_father_lhs_with_perfect_channel():
    lay = SystemLayout.of(("R", 2), ("B", 2), ("E", 1))
    psi = StateSpec(lay, standard_object("Phi", 2).matrix)
    got = evaluate(parse_expr("1/2 I(R;E)@psi [qq]"), {"psi": psi})
    assert got["[qq]"] == pytest.approx(0.0, abs=1e-12)


def test_evaluate_hashing_matches_direct_eigensolve():
    m = 0.9 * standard_object("Phi", 2).matrix + 0.1 * np.eye(4) / 4
    rho = StateSpec(SystemLayout.of(("A", 2), ("B", 2)), m)
    want = vn_entropy_bits(ptrace(m, (2, 2), [1])) - vn_entropy_bits(m)
    got = evaluate(parse_expr("Icoh(A>B)@rho [q->q] + o[cc]"), {"rho": rho})
    assert got["[q->q]"] == pytest.approx(want, abs=1e-12)
    assert got["o[cc]"] == 0.0


def test_evaluate_errors():
    phi = standard_object("Phi", 2)
    with pytest.raises(UnboundTag):
        evaluate(parse_expr("H(A)@psi [qq]"), {})
    with pytest.raises(UnknownLabel):
        evaluate(parse_expr("H(Z)@psi [qq]"), {"psi": phi})


def _axiom_labels(ri):
    out = {}
    for e in (ri.lhs, ri.rhs):
        for _, c in e.terms:
            for a, _ in c.atoms:
                out.setdefault(a.tag, set()).update(a.labels)
    for ctx in ri.basis.contexts:
        out.setdefault(ctx.tag, set()).update(ctx.labels)
    return out


@pytest.mark.parametrize("ax", axiom_db(), ids=lambda a: a.name)
def test_axioms_evaluate_to_finite_numbers(ax):
    ri = ax.ri
    bindings = {t: concrete_state(ls, ri.basis.context(t), rng=1)
                for t, ls in _axiom_labels(ri).items()}
    for side in (ri.lhs, ri.rhs):
        vals = [v for k, v in evaluate(side, bindings).items() if not k.startswith("inf")]
        assert np.all(np.isfinite(vals))

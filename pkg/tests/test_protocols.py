import numpy as np
import pytest

from oracles import classical_twirl_coherent_residual

from ricalc.algebra import expr_equal, parse_expr
from ricalc.errors import DimensionMismatch, OwnershipError, UnknownKind, UnknownLabel
from ricalc.protocols import (ALICE, BOB, KEY_A, KEY_B, KINDS, Lab, check_decoupling,
                              coherent_round_trip, coherent_sd, coherent_tp, dense_code,
                              distribute, intertwining_error, product_residual, run_absolutize,
                              run_unit, teleport)
from ricalc.quantum import StateSpec, SystemLayout, tensor
from ricalc.quantum.random import random_density, random_pure_state

TOL = 1e-10


def haar_input(rng, payload=("A1",), ref_dim=2):
    labels = [("R", ref_dim)] + [(p, 2) for p in payload]
    return random_pure_state(SystemLayout.of(*labels), rng)


def entangled(d, payload="A'"):
    v = np.zeros(d * d)
    v[[i * d + i for i in range(d)]] = 1 / np.sqrt(d)
    return StateSpec.from_vector(SystemLayout.of(("R", d), (payload, d)), v)


# -- unit protocols -------------------------------------------------------------

def test_teleportation_on_haar_inputs():
    rng = np.random.default_rng(21)
    for _ in range(50):
        res = teleport(haar_input(rng))
        assert res.accuracy < TOL
        assert res.ledger_matches
    assert expr_equal(res.consumed, parse_expr("2[c->c] + [qq]"))


def test_teleportation_of_mixed_input():
    rho = random_density(SystemLayout.of(("R", 3), ("A1", 2)), 22)
    assert teleport(rho).accuracy < TOL


@pytest.mark.parametrize("message", range(4))
def test_dense_coding_decodes_every_message(message):
    res = dense_code(message)
    assert res.details["decoded"] == message
    assert res.accuracy < TOL
    assert res.ledger_matches
    assert expr_equal(res.consumed, parse_expr("[q->q] + [qq]"))


def test_dense_coding_rejects_bad_message():
    with pytest.raises(DimensionMismatch):
        dense_code(4)


def test_entanglement_distribution():
    res = distribute()
    assert res.accuracy < TOL and res.ledger_matches


def test_coherent_sd_creates_extra_ebits():
    rng = np.random.default_rng(23)
    for _ in range(10):
        res = coherent_sd(haar_input(rng))
        assert res.accuracy < TOL
        assert res.ledger_matches
    assert expr_equal(res.consumed, parse_expr("2[q->qq] + [qq]"))
    assert expr_equal(res.declared_created, parse_expr("[q->q] + 2[qq]"))


def test_coherent_tp_realizes_two_cobits():
    rng = np.random.default_rng(24)
    for _ in range(10):
        res = coherent_tp(haar_input(rng, ("A1", "A2")))
        assert res.accuracy < TOL
        assert res.ledger_matches


def test_coherent_round_trip_nets_the_identity():
    res = coherent_round_trip(haar_input(np.random.default_rng(25)))
    assert res.accuracy < TOL
    assert res.ledger_matches
    # [q->q] + 2[qq] consumed, [q->q] + 2[qq] created
    assert expr_equal(res.consumed, res.declared_created)


def test_run_unit_dispatch_and_errors():
    rng = np.random.default_rng(26)
    assert run_unit("TP", haar_input(rng)).accuracy < TOL
    assert run_unit("SD", message=3).details["decoded"] == 3
    with pytest.raises(UnknownKind):
        run_unit("XX")
    with pytest.raises(DimensionMismatch):
        teleport(random_pure_state(SystemLayout.of(("R", 2), ("A1", 3)), rng))
    with pytest.raises(DimensionMismatch):
        teleport(random_pure_state(SystemLayout.of(("R", 2), ("Q", 2)), rng))


def test_lab_enforces_ownership():
    lab = Lab(haar_input(np.random.default_rng(27)), {"R": "ref", "A1": ALICE})
    with pytest.raises(OwnershipError):
        lab.unitary(BOB, np.eye(2), "A1")


def test_keep_env_trace_is_available():
    res = teleport(haar_input(np.random.default_rng(28)), keep_env=True)
    assert res.qp_state is not None
    assert res.accuracy < TOL


# -- absolutization ---------------------------------------------------------------

@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("kind", KINDS)
def test_absolutize_validity_and_decoupling(kind, d):
    res = run_absolutize(kind, d, entangled(d), keep_env=True)
    assert res.details["input_distance"] < TOL
    assert res.accuracy < TOL
    assert check_decoupling(res) < TOL
    if kind != "classical":
        assert check_decoupling(res, mode="coherent") < TOL


@pytest.mark.parametrize("d", [2, 3])
def test_intertwiner_relation(d):
    assert intertwining_error(d) < 1e-12


def test_classical_twirl_keeps_key_correlated_with_environment():
    res = run_absolutize("classical", 2, entangled(2), keep_env=True)
    got = check_decoupling(res, mode="coherent")
    assert got > 0.1
    assert got == pytest.approx(classical_twirl_coherent_residual(), abs=1e-10)


def test_classical_twirl_on_diagonal_input():
    l = SystemLayout.of(("R", 2), ("A'", 2))
    diag = StateSpec(l, np.diag([0.7, 0.0, 0.0, 0.3]))
    res = run_absolutize("classical", 2, diag)
    assert res.details["input_distance"] < TOL


def test_absolutize_errors():
    with pytest.raises(UnknownKind):
        run_absolutize("bogus", 2, entangled(2))
    with pytest.raises(DimensionMismatch):
        run_absolutize("id", 3, entangled(2))
    res = run_absolutize("id", 2, entangled(2))
    with pytest.raises(ValueError):
        check_decoupling(res, mode="coherent")
    with pytest.raises(UnknownKind):
        check_decoupling(res, mode="other")


def test_product_residual():
    l = SystemLayout.of(("X", 2))
    prod = tensor(random_density(l, 1), random_density(SystemLayout.of(("Q", 3)), 2))
    assert product_residual(prod, ["X"]) < 1e-12
    bell = entangled(2)
    assert product_residual(bell, ["R"]) > 0.5
    with pytest.raises(UnknownLabel):
        product_residual(prod, ["Z"])
    assert KEY_A != KEY_B

import json

import numpy as np
import pytest

from ricalc.errors import (DimensionMismatch, DuplicateLabel, InvalidState, NotIsometry,
                           NotTracePreserving, OutOfRange, UnknownKind, UnknownLabel)
from ricalc.info import trace_distance, trace_norm
from ricalc.quantum import (ChannelSpec, InstrumentSpec, IsometrySpec, StateSpec, SystemLayout,
                            apply, apply_instrument, channel_from_json, channel_to_json,
                            check_channel, check_state, compose, depolarizing, dephasing,
                            erasure, amplitude_damping, merge_labels, named_channel,
                            partial_trace, permute, purify, standard_object, state_from_json,
                            state_to_json, stinespring, tensor)
from ricalc.quantum.ops import purification_vector
from ricalc.quantum.random import random_density, random_pure_state, random_unitary


def lay(*pairs):
    return SystemLayout.of(*pairs)


def ket_state(labels, dims, vec):
    return StateSpec.from_vector(SystemLayout(labels, dims), vec)


def matrix_units(d):
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1
            yield e


# -- layouts and validation ---------------------------------------------------

def test_layout_rejects_duplicates_and_oversize():
    with pytest.raises(DuplicateLabel):
        SystemLayout(("A", "A"), (2, 2))
    with pytest.raises(DimensionMismatch):
        SystemLayout(("A", "B"), (64, 128))


def test_state_validation():
    with pytest.raises(InvalidState):
        StateSpec(lay(("A", 2)), np.diag([0.7, 0.7]))
    with pytest.raises(InvalidState):
        StateSpec(lay(("A", 2)), np.diag([1.1, -0.1]))
    with pytest.raises(InvalidState):
        StateSpec(lay(("A", 2)), np.array([[0.5, 0.3], [0.1, 0.5]]))
    # tiny negative eigenvalues are clamped
    s = StateSpec(lay(("A", 2)), np.diag([1 + 5e-11, -5e-11]))
    assert s.eigenvalues().min() >= 0


def test_check_state_coerces_arrays():
    s = check_state([1, 0, 0, 1], lay(("A", 2), ("B", 2)))
    assert s.is_pure()
    with pytest.raises(DimensionMismatch):
        check_state(np.eye(2) / 2)


def test_channel_validation():
    with pytest.raises(NotTracePreserving):
        ChannelSpec(lay(("A", 2)), lay(("B", 2)), [0.5 * np.eye(2)])
    ChannelSpec(lay(("A", 2)), lay(("B", 2)), [0.5 * np.eye(2)], cp_only=True)
    with pytest.raises(NotIsometry):
        IsometrySpec(lay(("A", 2)), lay(("B", 2)), 2 * np.eye(2))
    with pytest.raises(TypeError):
        check_channel(np.eye(2))


# -- tensor, partial trace, permute ---------------------------------------------

def test_tensor_of_maximally_mixed_is_maximally_mixed():
    t = tensor(standard_object("tau", 2), standard_object("tau", 2).relabel({"A": "B"}))
    np.testing.assert_allclose(t.matrix, np.eye(4) / 4)
    assert t.labels == ("A", "B")


def test_tensor_pure_with_pure_is_pure():
    zero = ket_state(("C",), (2,), [1, 0])
    t = tensor(standard_object("Phi", 2), zero)
    assert t.layout.total == 8
    assert np.linalg.matrix_rank(t.matrix, tol=1e-10) == 1


def test_tensor_label_clash():
    with pytest.raises(DuplicateLabel):
        tensor(standard_object("tau", 2), standard_object("tau", 2))


def test_partial_trace_of_phi_is_tau():
    for d in (2, 3):
        r = partial_trace(standard_object("Phi", d), ["A"])
        np.testing.assert_allclose(r.matrix, np.eye(d) / d, atol=1e-14)


def test_partial_trace_of_product():
    rng = np.random.default_rng(1)
    a = random_density(lay(("A", 2)), rng)
    b = random_density(lay(("B", 3)), rng)
    np.testing.assert_allclose(partial_trace(tensor(a, b), ["A"]).matrix, a.matrix, atol=1e-14)
    np.testing.assert_allclose(partial_trace(tensor(a, b), ["B"]).matrix, b.matrix, atol=1e-14)
    with pytest.raises(UnknownLabel):
        partial_trace(a, ["Z"])


def test_pure_marginal_spectra_agree():
    rng = np.random.default_rng(2)
    for _ in range(10):
        psi = random_pure_state(lay(("A", 2), ("B", 2), ("E", 2)), rng)
        wa = np.sort(partial_trace(psi, ["A"]).eigenvalues())
        wbe = np.sort(partial_trace(psi, ["B", "E"]).eigenvalues())[-2:]
        np.testing.assert_allclose(wa, wbe, atol=1e-12)


def test_permute_round_trip_and_merge():
    rng = np.random.default_rng(3)
    s = random_density(lay(("A", 2), ("B", 3), ("C", 2)), rng)
    back = permute(permute(s, ["C", "A", "B"]), ["A", "B", "C"])
    np.testing.assert_allclose(back.matrix, s.matrix)
    m = merge_labels(s, ["A", "C"], "AC")
    assert m.labels == ("B", "AC") and m.dims == (3, 4)
    np.testing.assert_allclose(partial_trace(m, ["B"]).matrix, partial_trace(s, ["B"]).matrix,
                               atol=1e-14)


# -- purification ------------------------------------------------------------------

def test_purify_tau():
    p = purify(standard_object("tau", 2), "R")
    assert p.purity == pytest.approx(1.0)
    np.testing.assert_allclose(partial_trace(p, ["A"]).matrix, np.eye(2) / 2, atol=1e-12)


def test_purify_pure_state_has_trivial_reference():
    s = ket_state(("A",), (2,), [0.6, 0.8])
    p = purify(s, "R")
    assert p.layout.dim("R") == 1
    np.testing.assert_allclose(partial_trace(p, ["A"]).matrix, s.matrix, atol=1e-12)


def test_purify_diagonal():
    s = StateSpec(lay(("A", 2)), np.diag([0.9, 0.1]))
    p = purify(s, "R")
    np.testing.assert_allclose(partial_trace(p, ["A"]).matrix, s.matrix, atol=1e-12)
    with pytest.raises(DuplicateLabel):
        purify(s, "A")


def test_purify_round_trip_random():
    rng = np.random.default_rng(4)
    for k in range(100):
        d = (2, 3, 4, 8)[k % 4]
        s = random_density(lay(("A", d)), rng, rank=1 + k % d)
        p = purify(s, "R")
        assert p.is_pure()
        assert trace_norm(partial_trace(p, ["A"]).matrix - s.matrix) < 1e-9


def test_purification_is_canonical():
    rng = np.random.default_rng(5)
    s = random_density(lay(("A", 3)), rng)
    np.testing.assert_array_equal(purification_vector(s.matrix), purification_vector(s.matrix))
    # reference-side Gram matrices of two purifications share a spectrum
    other = purification_vector(s.matrix) @ random_unitary(3, rng)
    g1 = purification_vector(s.matrix).T @ purification_vector(s.matrix).conj()
    g2 = other.T @ other.conj()
    np.testing.assert_allclose(np.linalg.eigvalsh(g1), np.linalg.eigvalsh(g2), atol=1e-9)


# -- channels ------------------------------------------------------------------------

def test_stinespring_identity():
    v = stinespring(check_channel(standard_object("id", 2)), "E")
    assert v.out_layout.dim("E") == 1
    np.testing.assert_allclose(v.matrix, np.eye(2))


@pytest.mark.parametrize("chan", [standard_object("idbar", 2), depolarizing(0.5),
                                  dephasing(0.3), erasure(0.2), amplitude_damping(0.4)])
def test_stinespring_matches_channel_on_matrix_units(chan):
    v = stinespring(chan, "E")
    np.testing.assert_allclose(v.matrix.conj().T @ v.matrix, np.eye(2), atol=1e-12)
    dout = chan.out_layout.total
    n = v.out_layout.dim("E")
    for e in matrix_units(2):
        want = sum(k @ e @ k.conj().T for k in chan.kraus)
        full = (v.matrix @ e @ v.matrix.conj().T).reshape(dout, n, dout, n)
        np.testing.assert_allclose(np.einsum("aebe->ab", full), want, atol=1e-9)


def test_stinespring_rejects_cp_only():
    with pytest.raises(NotTracePreserving):
        stinespring(ChannelSpec(lay(("A", 2)), lay(("B", 2)), [0.5 * np.eye(2)], cp_only=True),
                    "E")


def test_apply_identity_on_phi():
    phi = standard_object("Phi", 3)
    out = apply(standard_object("id", 3), phi, ["A"], ["A"])
    assert out.labels == ("B", "A")
    np.testing.assert_allclose(permute(out, ["A", "B"]).matrix, phi.matrix, atol=1e-14)


def test_apply_dephasing_uniform_superposition():
    plus = ket_state(("X_A'",), (2,), [1, 1])
    out = apply(standard_object("idbar", 2), plus, ["X_A'"])
    np.testing.assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-14)


def test_coherent_channel_on_phi_gives_ghz():
    phi = standard_object("Phi", 2).relabel({"A": "R", "B": "A'"})
    out = apply(standard_object("Delta", 2), phi, ["A'"])
    assert out.labels == ("R", "A", "B") and out.is_pure()
    ghz = np.zeros(8)
    ghz[0] = ghz[7] = 1 / np.sqrt(2)
    np.testing.assert_allclose(out.matrix, np.outer(ghz, ghz), atol=1e-14)
    for pair in (["R", "A"], ["R", "B"], ["A", "B"]):
        np.testing.assert_allclose(partial_trace(out, pair).matrix,
                                   np.diag([0.5, 0, 0, 0.5]), atol=1e-14)


def test_apply_errors():
    phi = standard_object("Phi", 2)
    with pytest.raises(DimensionMismatch):
        apply(standard_object("id", 3), phi, ["A"])
    with pytest.raises(UnknownLabel):
        apply(standard_object("id", 2), phi, ["Q"])


def test_monotonicity_of_trace_distance():
    rng = np.random.default_rng(6)
    for k in range(100):
        d = 2 if k % 2 else 3
        l = lay(("A", d))
        rho, sigma = random_density(l, rng), random_density(l, rng)
        u = random_unitary(d, rng)
        p = rng.uniform()
        chan = ChannelSpec(l, l, [np.sqrt(p) * u, np.sqrt(1 - p) * np.eye(d)])
        before = trace_distance(rho, sigma)
        after = trace_distance(apply(chan, rho, ["A"]), apply(chan, sigma, ["A"]))
        assert after <= before + 1e-9


def test_compose_dephasing_twice():
    c = compose(dephasing(0.5), dephasing(0.5).relabel({"A'": "B"}, {"B": "C"}))
    plus = ket_state(("A'",), (2,), [1, 1])
    np.testing.assert_allclose(apply(c, plus, ["A'"]).matrix, np.eye(2) / 2, atol=1e-14)


# -- instruments ---------------------------------------------------------------------

def test_instrument_single_branch():
    t = InstrumentSpec(lay(("A", 2)), lay(("B", 2)), [[np.eye(2)]])
    s = ket_state(("A",), (2,), [0.6, 0.8])
    out = apply_instrument(t, s, ["A"], "X")
    assert out.labels == ("B", "X")
    np.testing.assert_allclose(out.matrix, np.kron(s.matrix, [[1]]), atol=1e-14)


def test_measurement_instrument_on_tau():
    t = InstrumentSpec(lay(("A", 2)), lay(("B", 2)),
                       [[np.diag([1, 0])], [np.diag([0, 1])]])
    out = apply_instrument(t, standard_object("tau", 2), ["A"], "X")
    np.testing.assert_allclose(partial_trace(out, ["X"]).matrix, np.eye(2) / 2)


def test_unitary_ensemble_instrument_outcome_marginal():
    p = np.array([0.1, 0.2, 0.3, 0.4])
    paulis = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]),
              np.diag([1, -1])]
    t = InstrumentSpec(lay(("B", 2)), lay(("B2", 2)),
                       [[np.sqrt(px) * u] for px, u in zip(p, paulis)])
    out = apply_instrument(t, standard_object("Phi", 2), ["B"], "X")
    np.testing.assert_allclose(np.diag(partial_trace(out, ["X"]).matrix).real, p, atol=1e-14)


def test_instrument_must_sum_to_cptp():
    with pytest.raises(NotTracePreserving):
        InstrumentSpec(lay(("A", 2)), lay(("B", 2)), [[np.diag([1, 0])]])


# -- standard objects -------------------------------------------------------------------

def test_standard_phi_and_phibar():
    want = np.zeros((4, 4))
    want[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_array_equal(standard_object("Phi", 2).matrix, want)
    np.testing.assert_array_equal(standard_object("Phibar", 2).matrix, np.diag([.5, 0, 0, .5]))


def test_standard_delta_isometry():
    v = standard_object("Delta", 2).matrix
    want = np.zeros((4, 2))
    want[0, 0] = want[3, 1] = 1
    np.testing.assert_array_equal(v, want)


def test_covariance_id_holds_delta_fails():
    rng = np.random.default_rng(7)
    u = random_unitary(2, rng)
    phi = standard_object("Phi", 2)
    rot = np.kron(u, u.conj())
    np.testing.assert_allclose(rot @ phi.matrix @ rot.conj().T, phi.matrix, atol=1e-12)
    # the coherent channel does not commute with a generic local unitary
    v = standard_object("Delta", 2).matrix
    lhs = v @ u
    rhs = np.kron(u, u) @ v
    assert np.max(np.abs(lhs - rhs)) > 1e-3


def test_standard_object_errors():
    with pytest.raises(UnknownKind):
        standard_object("Psi", 2)
    with pytest.raises(OutOfRange):
        standard_object("Phi", 1)


def test_named_channels():
    assert named_channel("depolarizing:0.1").n_kraus == 4
    assert named_channel("identity").out_layout.total == 2
    assert named_channel("erasure:0.3").out_layout.total == 3
    with pytest.raises(UnknownKind):
        named_channel("bitflip:0.1")
    with pytest.raises(OutOfRange):
        named_channel("dephasing:1.5")
    with pytest.raises(OutOfRange):
        named_channel("dephasing:x")


# -- JSON ----------------------------------------------------------------------------------

def test_state_json_round_trip():
    rng = np.random.default_rng(8)
    s = random_density(lay(("A", 2), ("B", 3)), rng)
    text = json.dumps(state_to_json(s))
    back = state_from_json(text)
    assert back.layout == s.layout
    np.testing.assert_array_equal(back.matrix, s.matrix)


def test_channel_json_round_trip():
    c = amplitude_damping(0.3)
    back = channel_from_json(json.dumps(channel_to_json(c)))
    for a, b in zip(c.kraus, back.kraus):
        np.testing.assert_array_equal(a, b)


def test_json_rejects_bad_entries():
    with pytest.raises(DimensionMismatch):
        state_from_json({"labels": [{"name": "A", "dim": 2}], "matrix": [[1, 0], [0, 0]]})

import numpy as np
import pytest

from oracles import binary_entropy

from ricalc.errors import OutOfRange, OverlappingGroups, UnknownKind, UnknownLabel
from ricalc.info import (aligned_extension, coherent_information, conditional_entropy,
                         conditional_mutual_information, distance_report, entropy,
                         fannes_bound, fidelity, helstrom_probability, mutual_information,
                         op_distance, projective_search_probability, report_for_groups,
                         run_identity_suite, subsystem_entropy, trace_distance, trace_norm,
                         uhlmann_search)
from ricalc.quantum import (StateSpec, SystemLayout, check_channel, compose, depolarizing,
                            dephasing, partial_trace, standard_object, tensor, tensor_channels)
from ricalc.quantum.random import random_density, random_pure_state


def lay(*pairs):
    return SystemLayout.of(*pairs)


# -- entropies ----------------------------------------------------------------

def test_entropies_of_phi():
    phi = standard_object("Phi", 2)
    assert subsystem_entropy(phi, ["A"]) == pytest.approx(1.0, abs=1e-12)
    assert subsystem_entropy(phi, ["A", "B"]) == pytest.approx(0.0, abs=1e-12)
    assert mutual_information(phi, ["A"], ["B"]) == pytest.approx(2.0, abs=1e-12)
    assert coherent_information(phi, ["A"], ["B"]) == pytest.approx(1.0, abs=1e-12)
    assert conditional_entropy(phi, ["A"], ["B"]) == pytest.approx(-1.0, abs=1e-12)


def test_entropy_of_classical_correlation():
    bar = standard_object("Phibar", 2)
    assert mutual_information(bar, ["X_A"], ["X_B"]) == pytest.approx(1.0, abs=1e-12)
    assert coherent_information(bar, ["X_A"], ["X_B"]) == pytest.approx(0.0, abs=1e-12)


def test_entropy_of_schmidt_state_matches_binary_entropy():
    for theta in (np.pi / 8, np.pi / 6):
        c, s = np.cos(theta), np.sin(theta)
        psi = StateSpec.from_vector(lay(("A", 2), ("B", 2)), [c, 0, 0, s])
        assert subsystem_entropy(psi, ["A"]) == pytest.approx(binary_entropy(c * c), abs=1e-12)


def test_entropy_report_and_errors():
    rho = random_density(lay(("A", 2), ("B", 2), ("C", 2)), 0)
    rep = entropy(rho, "Icmi", ["A"], ["B"], ["C"])
    assert rep.symbol == "I(A;B|C)" and rep.to_dict()["kind"] == "Icmi"
    with pytest.raises(UnknownKind):
        entropy(rho, "Hmax", ["A"])
    with pytest.raises(ValueError):
        entropy(rho, "H", ["A"], ["B"])
    with pytest.raises(OverlappingGroups):
        mutual_information(rho, ["A"], ["A", "B"])
    with pytest.raises(UnknownLabel):
        subsystem_entropy(rho, ["Z"])
    assert len(report_for_groups(rho, [["A"], ["B"], ["C"]])) == 7


def test_strong_subadditivity_random():
    rng = np.random.default_rng(11)
    for k in range(500):
        dims = (2, 2, 2) if k % 2 else (2, 3, 2)
        rho = random_density(lay(("A", dims[0]), ("B", dims[1]), ("X", dims[2])), rng)
        assert conditional_mutual_information(rho, ["A"], ["B"], ["X"]) >= -1e-9


# -- distances ------------------------------------------------------------------

def test_trace_distance_is_full_norm():
    zero = StateSpec(lay(("A", 2)), np.diag([1.0, 0.0]))
    one = StateSpec(lay(("A", 2)), np.diag([0.0, 1.0]))
    assert trace_distance(zero, one) == pytest.approx(2.0)
    assert trace_norm(np.array([[0, 1], [0, 0]])) == pytest.approx(1.0)


def test_fidelity_known_values():
    phi = standard_object("Phi", 2)
    assert fidelity(phi, phi) == pytest.approx(1.0)
    tau4 = StateSpec(phi.layout, np.eye(4) / 4)
    assert fidelity(phi, tau4) == pytest.approx(0.25)


def test_fuchs_van_de_graaf_random_pairs():
    rng = np.random.default_rng(12)
    for k in range(500):
        l = lay(("A", 2 + k % 2))
        lo, mid, hi = distance_report(random_density(l, rng),
                                      random_density(l, rng)).fuchs_van_de_graaf()
        assert lo <= mid + 1e-9 and mid <= hi + 1e-9
    for _ in range(50):
        l = lay(("A", 3))
        _, mid, hi = distance_report(random_pure_state(l, rng),
                                     random_pure_state(l, rng)).fuchs_van_de_graaf()
        assert mid == pytest.approx(hi, abs=1e-9)


def test_uhlmann_matches_fidelity():
    rng = np.random.default_rng(13)
    for d in (2, 3):
        a, b = random_density(lay(("A", d)), rng), random_density(lay(("A", d)), rng)
        assert uhlmann_search(a, b, restarts=4, seed=1) == pytest.approx(fidelity(a, b),
                                                                         abs=1e-6)


@pytest.mark.parametrize("eps", [0.01, 0.1])
def test_aligned_extension_stays_close(eps):
    rng = np.random.default_rng(14)
    for _ in range(5):
        sigma_ext = random_density(lay(("A", 2), ("C", 2)), rng)
        sigma = partial_trace(sigma_ext, ["A"])
        other = random_density(lay(("A", 2)), rng)
        t = eps / trace_distance(sigma, other)
        rho = StateSpec(sigma.layout, (1 - t) * sigma.matrix + t * other.matrix)
        ext = aligned_extension(rho, sigma_ext)
        np.testing.assert_allclose(partial_trace(ext, ["A"]).matrix, rho.matrix, atol=1e-9)
        assert trace_distance(ext, sigma_ext) <= 2 * np.sqrt(eps) + 1e-9


def test_helstrom_bound_by_projective_search():
    rng = np.random.default_rng(15)
    a, b = random_density(lay(("A", 2)), rng), random_density(lay(("A", 2)), rng)
    best = projective_search_probability(a.matrix, b.matrix, n=10_000, rng=rng)
    assert best <= helstrom_probability(a, b) + 1e-6
    assert best >= helstrom_probability(a, b) - 1e-2


# -- continuity bound ---------------------------------------------------------------

def test_fannes_bound_values():
    assert fannes_bound(4, 0.0) == 0.0
    assert fannes_bound(4, 0.1) == pytest.approx(-0.1 * np.log2(0.1) + 0.2)
    assert fannes_bound(4, 1.0) == pytest.approx(2 + 2)
    with pytest.raises(OutOfRange):
        fannes_bound(1, 0.1)
    with pytest.raises(OutOfRange):
        fannes_bound(2, 2.5)


def test_fannes_bound_on_nearby_pairs():
    rng = np.random.default_rng(16)
    l = lay(("A", 2), ("B", 2))
    for _ in range(500):
        rho, omega = random_density(l, rng), random_density(l, rng)
        eps = rng.uniform(0, 0.1)
        t = eps / trace_distance(rho, omega)
        sigma = StateSpec(l, (1 - t) * rho.matrix + t * omega.matrix)
        gap = abs(coherent_information(rho, ["A"], ["B"])
                  - coherent_information(sigma, ["A"], ["B"]))
        assert gap <= fannes_bound(4, eps)
    assert fannes_bound(4, 0.0) >= 0.0  # identical states


# -- operation distance -----------------------------------------------------------

def _idbar():
    return standard_object("idbar", 2).relabel({"X_A'": "A'"}, {"X_B": "B"})


def test_op_distance_same_channel_is_zero():
    c = depolarizing(0.3)
    assert op_distance(c, c, standard_object("tau", 2).relabel({"A": "A'"})) == \
        pytest.approx(0.0, abs=1e-12)
    assert op_distance(c, c, restarts=4) == pytest.approx(0.0, abs=1e-12)


def test_op_distance_identity_vs_dephasing():
    # ||Phi_2 - Phibar_2||_1 = 1 and no input does better
    ident = check_channel(standard_object("id", 2))
    assert op_distance(ident, _idbar(), restarts=16) == pytest.approx(1.0, abs=1e-3)
    tau = standard_object("tau", 2).relabel({"A": "A'"})
    assert op_distance(ident, _idbar(), tau) == pytest.approx(1.0, abs=1e-12)


def test_op_distance_monotone_under_restriction():
    ident = check_channel(standard_object("id", 2))
    l = lay(("A'", 2))
    rng = np.random.default_rng(17)
    for _ in range(5):
        omega = random_density(l, rng)
        assert op_distance(ident, _idbar(), omega) <= op_distance(ident, _idbar(),
                                                                  restarts=16) + 1e-9


def test_op_distance_tensor_and_composition():
    a, b = dephasing(0.1), dephasing(0.3)
    c, d = depolarizing(0.2), depolarizing(0.05)
    tau = standard_object("tau", 2).relabel({"A": "A'"})
    dab = op_distance(a, b, tau)
    dcd = op_distance(c, d, tau)
    two_a = tensor_channels(a, c.relabel({"A'": "A2"}, {"B": "B2"}))
    two_b = tensor_channels(b, d.relabel({"A'": "A2"}, {"B": "B2"}))
    omega = tensor(tau, tau.relabel({"A'": "A2"}))
    assert op_distance(two_a, two_b, omega) <= dab + dcd + 1e-9
    ca = compose(a, c.relabel({"A'": "B"}, {"B": "C"}))
    cb = compose(b, d.relabel({"A'": "B"}, {"B": "C"}))
    # composition: tau is a fixed point of both unital inner maps
    assert op_distance(ca, cb, tau) <= dab + dcd + 1e-9


# -- suite -------------------------------------------------------------------------

def test_identity_suite_passes_and_is_deterministic():
    a = run_identity_suite(40, seed=3)
    b = run_identity_suite(40, seed=3)
    assert a.passed
    assert a.to_dict() == b.to_dict()
    assert {c.name for c in a.checks} >= {"trip-identity", "cmi-nonneg", "fannes-bound"}

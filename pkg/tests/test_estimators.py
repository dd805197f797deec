import numpy as np
import pytest

from magic_meter.circuits import Circuit, apply_circuit, gate_h, gate_rz
from magic_meter.estimators import (
    EstimatorResult,
    bell_distribution,
    estimate_bell_magic,
    estimate_moment_bell,
    estimate_moment_conjugate,
    estimate_moment_gradient,
    estimate_participation,
    estimate_purity,
    exact_moment_gradient,
    expected_parity_value,
    hoeffding_budget,
    renyi_precision_budget,
)
from magic_meter.oracles import bell_magic, bell_sampling_distribution_exact, pauli_moment
from magic_meter.paulis import pauli_spectrum
from magic_meter.states import (
    conjugate_state,
    density_of,
    haar_random_state,
    plus_state,
    t_state,
    zero_state,
)


def test_bell_distribution_zero_state():
    # per-qubit marginals {00: 1/2, 10: 1/2}; X/Y outcomes never appear
    p = bell_distribution(zero_state(1), zero_state(1))
    assert np.allclose(p, [0.5, 0.0, 0.5, 0.0], atol=1e-12)
    p2 = bell_distribution(zero_state(2), zero_state(2))
    support = {i for i in range(16) if p2[i] > 1e-12}
    assert support == {0, 2, 8, 10}  # tensor combinations of I and Z


def test_bell_distribution_conjugate_is_pauli_spectrum():
    rng = np.random.default_rng(0)
    for nq in (1, 2, 3):
        psi = haar_random_state(nq, rng)
        dist = bell_distribution(conjugate_state(psi), psi)
        assert np.allclose(dist, pauli_spectrum(psi).probabilities, atol=1e-10)


def test_bell_distribution_same_copy_matches_oracle():
    rng = np.random.default_rng(1)
    psi = haar_random_state(2, rng)
    assert np.allclose(
        bell_distribution(psi, psi), bell_sampling_distribution_exact(psi), atol=1e-10
    )


def test_bell_distribution_real_states_coincide():
    psi = np.array([0.6, 0.0, 0.0, 0.8], dtype=complex)
    assert np.allclose(
        bell_distribution(psi, psi), bell_distribution(conjugate_state(psi), psi), atol=1e-12
    )


def test_bell_distribution_mixed_matches_pure():
    rng = np.random.default_rng(2)
    psi = haar_random_state(2, rng)
    pure = bell_distribution(psi, psi)
    mixed = bell_distribution(density_of(psi), density_of(psi))
    assert np.allclose(pure, mixed, atol=1e-10)


def test_bell_distribution_errors():
    with pytest.raises(ValueError):
        bell_distribution(zero_state(1), zero_state(2))


def test_parity_estimator_is_unbiased_infinite_shots():
    # XOR-convolution expectation of the parity estimator equals the moment
    rng = np.random.default_rng(3)
    for nq in (1, 2, 3):
        psi = haar_random_state(nq, rng)
        dist = bell_distribution(psi, psi)
        for n in (1, 2, 3, 4):
            val = expected_parity_value([dist] * n, n, nq)
            assert val == pytest.approx(pauli_moment(psi, n), abs=1e-9)


def test_bell_estimator_stabilizer_state_deterministic():
    res = estimate_moment_bell(zero_state(3), 3, 50, np.random.default_rng(4))
    assert res.value == 1.0
    assert res.std_error == 0.0


def test_bell_estimator_t_state_three_sigma():
    res = estimate_moment_bell(t_state(), 3, 10_000, np.random.default_rng(5))
    assert abs(res.value - 5 / 8) < 3 * res.std_error
    assert res.copies_consumed == 2 * 3 * 10_000


def test_bell_estimator_purity_mode():
    res = estimate_moment_bell(t_state(), 1, 4000, np.random.default_rng(6))
    assert abs(res.value - 1.0) <= 3 * max(res.std_error, 1e-3)
    rho = 0.5 * density_of(zero_state(1)) + 0.5 * density_of(plus_state(1))
    res_mixed = estimate_purity(rho, 20_000, np.random.default_rng(7))
    true_purity = float(np.real(np.trace(rho @ rho)))
    assert abs(res_mixed.value - true_purity) < 3 * res_mixed.std_error


def test_bell_estimator_even_refused_without_flag():
    with pytest.raises(ValueError):
        estimate_moment_bell(t_state(), 2, 100, np.random.default_rng(8))
    res = estimate_moment_bell(t_state(), 2, 20_000, np.random.default_rng(8), allow_even=True)
    assert abs(res.value - 0.75) < 4 * res.std_error


def test_bell_estimator_per_repetition_range():
    rng = np.random.default_rng(9)
    psi = haar_random_state(2, rng)
    res_odd = estimate_moment_bell(psi, 3, 500, rng)
    assert -1.0 <= res_odd.value <= 1.0
    res_even = estimate_moment_bell(psi, 2, 500, rng, allow_even=True)
    assert 0.0 <= res_even.value <= 4.0  # per-repetition values in {0, 2^N}


def test_conjugate_estimator_stabilizer_deterministic():
    res = estimate_moment_conjugate(zero_state(3), 2, 100, np.random.default_rng(10))
    assert res.value == 1.0 and res.std_error == 0.0


@pytest.mark.parametrize("n,target", [(2, 3 / 4), (3, 5 / 8), (4, 9 / 16)])
def test_conjugate_estimator_t_state(n, target):
    res = estimate_moment_conjugate(t_state(), n, 10_000, np.random.default_rng(11 + n))
    assert abs(res.value - target) < 3 * res.std_error


def test_conjugate_estimator_needs_n_at_least_two():
    with pytest.raises(ValueError):
        estimate_moment_conjugate(t_state(), 1, 10, np.random.default_rng(0))


def test_estimators_deterministic_under_seed():
    a = estimate_moment_bell(t_state(), 3, 200, np.random.default_rng(12), seed=12)
    b = estimate_moment_bell(t_state(), 3, 200, np.random.default_rng(12), seed=12)
    assert a == b
    assert a.to_json() == b.to_json()


def test_unbiasedness_over_many_runs():
    rng = np.random.default_rng(13)
    psi = haar_random_state(2, rng)
    exact = pauli_moment(psi, 3)
    values, errors = [], []
    for k in range(60):
        res = estimate_moment_bell(psi, 3, 400, np.random.default_rng(1000 + k))
        values.append(res.value)
        errors.append(res.std_error)
    pooled_se = np.sqrt(np.sum(np.square(errors))) / len(values)
    assert abs(np.mean(values) - exact) < 4 * pooled_se


def test_renyi_from_estimate_with_propagated_error():
    rng = np.random.default_rng(40)
    psi = haar_random_state(2, rng)
    n = 3
    from magic_meter.oracles import renyi_stabilizer_entropy

    exact = renyi_stabilizer_entropy(psi, n)
    res = estimate_moment_bell(psi, n, 20_000, rng)
    est = np.log(res.value) / (1 - n)
    propagated = res.std_error / ((n - 1) * res.value)
    assert abs(est - exact) <= 3 * propagated


def _phase_circuit(theta: float) -> Circuit:
    return Circuit(1, (gate_h(1), gate_rz(1, theta)))


def test_exact_gradient_matches_closed_form():
    # moment A_2(theta) = (1 + cos^4 + sin^4)/2 so dA_2/dtheta = -sin(4 theta)/2
    for theta in (np.pi / 8, 0.0, 1.1):
        grad = exact_moment_gradient(_phase_circuit(theta), 0, 2)
        assert grad == pytest.approx(-np.sin(4 * theta) / 2, abs=1e-9)
    assert exact_moment_gradient(_phase_circuit(np.pi / 8), 0, 2) == pytest.approx(-0.5, abs=1e-9)


def test_exact_gradient_matches_finite_difference():
    rng = np.random.default_rng(14)
    h = 1e-4
    for _ in range(5):
        nq = int(rng.integers(1, 3))
        from magic_meter.circuits import random_rotation_circuit

        circ = random_rotation_circuit(nq, 2, rng)
        k = int(rng.integers(len(circ.rotation_indices())))
        for n in (2, 3):
            up = pauli_moment(apply_circuit(circ.shifted(k, h)), n)
            down = pauli_moment(apply_circuit(circ.shifted(k, -h)), n)
            fd = (up - down) / (2 * h)
            assert exact_moment_gradient(circ, k, n) == pytest.approx(fd, abs=1e-6)


def test_sampled_gradient_three_sigma():
    circ = _phase_circuit(np.pi / 8)
    res = estimate_moment_gradient(circ, 0, 2, 40_000, np.random.default_rng(15), allow_even=True)
    assert abs(res.value - (-0.5)) < 3 * res.std_error
    res0 = estimate_moment_gradient(_phase_circuit(0.0), 0, 2, 20_000, np.random.default_rng(16), allow_even=True)
    assert abs(res0.value) < 3 * max(res0.std_error, 1e-4)


def test_gradient_of_irrelevant_parameter_is_zero():
    # second rotation acts on an eigenstate axis, so the state ignores it
    circ = Circuit(1, (gate_h(1), gate_rz(1, 0.4), gate_h(1), gate_rz(1, 0.9)))
    # make a circuit where parameter 1 rotates around Z on |0>-like state:
    circ2 = Circuit(1, (gate_rz(1, 0.7), gate_h(1), gate_rz(1, 0.3)))
    grad = estimate_moment_gradient(circ2, 0, 3, 4000, np.random.default_rng(17))
    assert abs(grad.value) <= 3 * max(grad.std_error, 1e-4)


def test_gradient_index_validation():
    with pytest.raises(ValueError):
        estimate_moment_gradient(_phase_circuit(0.1), 3, 3, 10, np.random.default_rng(0))


def test_participation_estimator():
    res = estimate_participation(zero_state(2), 2, 1000, np.random.default_rng(18))
    assert res.value == 1.0 and res.std_error == 0.0
    res_plus = estimate_participation(plus_state(1), 2, 20_000, np.random.default_rng(19))
    assert abs(res_plus.value - 0.5) < 3 * res_plus.std_error
    with pytest.raises(ValueError):
        estimate_participation(zero_state(1), 3, 2, np.random.default_rng(0))


def test_flatness_composite_estimator():
    from magic_meter.estimators import estimate_flatness
    from magic_meter.oracles import flatness

    res = estimate_flatness(zero_state(2), 2000, np.random.default_rng(30))
    assert res.value == 0.0 and res.std_error == 0.0
    rng = np.random.default_rng(31)
    for k in range(5):
        psi = haar_random_state(2, rng)
        res = estimate_flatness(psi, 60_000, np.random.default_rng([32, k]))
        assert abs(res.value - flatness(psi)) <= 3 * res.std_error
        assert res.value > -3 * res.std_error  # nonnegative within noise


def test_bell_magic_estimator():
    res0 = estimate_bell_magic(zero_state(2), 400, np.random.default_rng(20))
    assert res0.value == 0.0 and res0.std_error == 0.0
    exact, _ = bell_magic(t_state())
    res = estimate_bell_magic(t_state(), 20_000, np.random.default_rng(21))
    assert abs(res.value - exact) < 3 * res.std_error
    assert 0.0 <= res.value <= 2.0


def test_hoeffding_budget_values():
    assert hoeffding_budget(0.05, 0.05, 2.0) == 2952
    # halving epsilon quadruples the budget
    small = hoeffding_budget(0.05, 0.1, 2.0)
    large = hoeffding_budget(0.025, 0.1, 2.0)
    assert abs(large - 4 * small) <= 4
    with pytest.raises(ValueError):
        hoeffding_budget(0.0, 0.05, 2.0)
    with pytest.raises(ValueError):
        hoeffding_budget(0.05, 0.05, -1.0)


def test_renyi_precision_budget():
    eps, shots = renyi_precision_budget(0.0, 3, 0.01)
    assert eps == pytest.approx(2 * 0.01)
    eps2, _ = renyi_precision_budget(np.log(2), 2, 0.01)
    assert eps2 == pytest.approx(0.005)
    assert shots == hoeffding_budget(eps, 0.05, 2.0)


def test_estimator_result_json_roundtrip():
    res = EstimatorResult(0.5, 0.01, 100, 600, "bell_parity", 3, 7)
    doc = res.to_json()
    assert '"algorithm": "bell_parity"' in doc and '"seed": 7' in doc

"""Simulated-measurement Monte-Carlo estimators.

All estimators work from the measurement statistics an experiment would see:
Bell-basis measurements on two copies, single-copy Pauli eigenbasis
measurements, and computational-basis samples.  Two copies a, b of an N-qubit
register are interleaved as (a_1, b_1, a_2, b_2, ...) so that a measured
2N-bit outcome is directly the interleaved index of a Pauli string.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from ._bits import popcount, spread_bits, xor_convolve
from .circuits import Circuit, apply_circuit
from .paulis import CapacityError, expectation, pauli_from_index
from .states import n_qubits_of

BELL_PURE_QUBIT_GUARD = 12  # per copy; the joint register has 2N qubits
BELL_MIXED_QUBIT_GUARD = 6

_BELL_4x4 = None


def _bell_matrix() -> np.ndarray:
    """U_Bell = (H tensor I) CNOT as a 4x4 on one (a_j, b_j) pair."""
    global _BELL_4x4
    if _BELL_4x4 is None:
        cnot = np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )
        h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        _BELL_4x4 = np.kron(h, np.eye(2)) @ cnot
    return _BELL_4x4


def _interleave_copies(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Tensor two N-qubit statevectors with qubits interleaved pairwise."""
    joint = np.multiply.outer(a, b).reshape([2] * (2 * n))
    order = [ax for j in range(n) for ax in (j, n + j)]
    return np.transpose(joint, order).reshape(-1)


def _bell_rotate(joint: np.ndarray, n: int) -> np.ndarray:
    """Apply U_Bell on every interleaved pair of a 2N-qubit statevector."""
    u4 = _bell_matrix()
    tensor = joint.reshape([4] * n)
    for axis in range(n):
        tensor = np.moveaxis(
            np.tensordot(u4, tensor, axes=([1], [axis])), 0, axis
        )
    return tensor.reshape(-1)


def bell_distribution(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Outcome distribution of measuring U_Bell^{tensor N} (a tensor b) in the
    computational basis; index = interleaved Pauli index.

    For (a, b) = (psi*, psi) this is the Pauli spectrum Xi; for (psi, psi) it
    is P(r) = 2^-N |<psi|sigma_r|psi*>|^2.  Density-matrix inputs are handled
    by eigendecomposition.
    """
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    n = n_qubits_of(a)
    if n_qubits_of(b) != n:
        raise ValueError("copies have different qubit counts")
    if a.ndim != b.ndim:
        raise ValueError("copies must both be pure or both mixed")
    if a.ndim == 1:
        if n > BELL_PURE_QUBIT_GUARD:
            raise CapacityError(f"Bell register guarded to 2x{BELL_PURE_QUBIT_GUARD} qubits")
        return np.abs(_bell_rotate(_interleave_copies(a, b, n), n)) ** 2
    if n > BELL_MIXED_QUBIT_GUARD:
        raise CapacityError(f"mixed-state Bell sampling guarded to {BELL_MIXED_QUBIT_GUARD} qubits")
    vals_a, vecs_a = np.linalg.eigh(a)
    vals_b, vecs_b = np.linalg.eigh(b)
    dist = np.zeros(4**n)
    for wa, va in zip(vals_a, vecs_a.T):
        if wa < 1e-12:
            continue
        for wb, vb in zip(vals_b, vecs_b.T):
            if wb < 1e-12:
                continue
            dist += wa * wb * np.abs(_bell_rotate(_interleave_copies(va, vb, n), n)) ** 2
    return dist


def sample_bell(dist: np.ndarray, size, rng) -> np.ndarray:
    """Draw outcome indices from a Bell distribution."""
    rng = np.random.default_rng(rng)
    return rng.choice(dist.shape[0], size=size, p=dist / dist.sum())


@dataclass(frozen=True)
class EstimatorResult:
    """Monte-Carlo estimate with its empirical standard error.

    ``shots`` counts repetitions L as defined per algorithm;
    ``copies_consumed`` counts state preparations the protocol would use.
    """

    value: float
    std_error: float
    shots: int
    copies_consumed: int
    algorithm: str = ""
    n: int | None = None
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "value": self.value,
                "std_error": self.std_error,
                "shots": self.shots,
                "copies_consumed": self.copies_consumed,
                "algorithm": self.algorithm,
                "n": self.n,
                "seed": self.seed,
            }
        )


def _result_from_samples(per_rep: np.ndarray, copies: int, algorithm: str, n, seed) -> EstimatorResult:
    reps = per_rep.shape[0]
    se = float(np.std(per_rep, ddof=1) / np.sqrt(reps)) if reps > 1 else 0.0
    return EstimatorResult(
        value=float(np.mean(per_rep)),
        std_error=se,
        shots=reps,
        copies_consumed=copies,
        algorithm=algorithm,
        n=None if n is None else int(n),
        seed=seed,
    )


def _parity_values(xors: np.ndarray, n: int, n_qubits: int) -> np.ndarray:
    """Per-repetition estimator value from XORed Bell outcomes.

    Odd n: product over qubits of (1 - 2 nu_1 nu_2) = (-1)^{# pairs 11}.
    Even n: 2^N when every pair is 00, else 0.
    """
    if n % 2:
        pair_mask = spread_bits((1 << n_qubits) - 1, n_qubits)
        both = np.asarray(xors, dtype=np.int64) & (np.asarray(xors, dtype=np.int64) >> 1) & pair_mask
        return 1.0 - 2.0 * (popcount(both) % 2)
    return np.where(np.asarray(xors) == 0, float(2**n_qubits), 0.0)


def _even_n_guard(n: int, allow_even: bool, what: str) -> None:
    if n % 2 == 0 and not allow_even:
        raise ValueError(
            f"{what} with even n={n} needs exponentially many measurements "
            "(outcome range grows as 2^N); set the allow-even override to run anyway"
        )


def estimate_moment_bell(
    state: np.ndarray,
    n: int,
    repetitions: int,
    rng,
    allow_even: bool = False,
    seed: int | None = None,
) -> EstimatorResult:
    """Pauli-moment estimator from Bell measurements on copy pairs (no
    conjugate needed; efficient for odd n, n = 1 estimates purity).

    Each repetition consumes n Bell samples of state x state and combines the
    per-qubit XOR parities of the 2N-bit outcomes.
    """
    if n < 1 or int(n) != n:
        raise ValueError("moment index must be a positive integer")
    _even_n_guard(n, allow_even, "the two-copy Bell estimator")
    rng = np.random.default_rng(rng)
    nq = n_qubits_of(state)
    dist = bell_distribution(state, state)
    outcomes = sample_bell(dist, (repetitions, n), rng)
    xors = np.bitwise_xor.reduce(outcomes, axis=1)
    per_rep = _parity_values(xors, n, nq)
    return _result_from_samples(per_rep, 2 * n * repetitions, "bell_parity", n, seed)


def estimate_moment_conjugate(
    state: np.ndarray, n: int, repetitions: int, rng, seed: int | None = None
) -> EstimatorResult:
    """Pauli-moment estimator that Bell-samples (psi*, psi) to draw Pauli
    strings from the spectrum, then multiplies 2n-2 single-copy eigenbasis
    measurement outcomes of the sampled string.  Unbiased for any integer
    n >= 2."""
    if n < 2 or int(n) != n:
        raise ValueError("the conjugate-sampling estimator needs integer n >= 2")
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1:
        raise ValueError("needs a pure state (the simulator builds psi*)")
    rng = np.random.default_rng(rng)
    nq = n_qubits_of(state)
    dist = bell_distribution(state.conj(), state)
    outcomes = sample_bell(dist, repetitions, rng)
    uniq, inverse = np.unique(outcomes, return_inverse=True)
    exps = np.array([expectation(state, pauli_from_index(int(i), nq)) for i in uniq])
    p_plus = (1.0 + exps[inverse]) / 2.0
    draws = rng.uniform(size=(repetitions, 2 * n - 2)) < p_plus[:, None]
    lam = np.where(draws, 1.0, -1.0)
    per_rep = np.prod(lam, axis=1)
    return _result_from_samples(per_rep, 2 * n * repetitions, "conjugate_sampling", n, seed)


def estimate_purity(state: np.ndarray, repetitions: int, rng, seed: int | None = None) -> EstimatorResult:
    """Destructive-SWAP-test purity: the n = 1 case of the Bell estimator."""
    res = estimate_moment_bell(state, 1, repetitions, rng, seed=seed)
    return EstimatorResult(
        res.value, res.std_error, res.shots, res.copies_consumed, "purity", 1, seed
    )


# -- gradients ----------------------------------------------------------------

def _prepared_state(circuit: Circuit) -> np.ndarray:
    return apply_circuit(circuit)


def _check_rotation_index(circuit: Circuit, k: int) -> None:
    count = len(circuit.rotation_indices())
    if not (0 <= k < count):
        raise ValueError(f"parameter index {k} outside the {count} rotation gates")


def estimate_moment_gradient(
    circuit: Circuit,
    k: int,
    n: int,
    repetitions: int,
    rng,
    allow_even: bool = False,
    seed: int | None = None,
) -> EstimatorResult:
    """Shift-rule gradient of the n-th Pauli moment with respect to the k-th
    rotation angle.

    For each shift s = +-pi/2, every repetition takes one Bell sample of
    (shifted state, unshifted state) and n-1 Bell samples of two unshifted
    copies, combined by the same parity rule; the gradient is
    n (B_+ - B_-)."""
    if n < 1 or int(n) != n:
        raise ValueError("moment index must be a positive integer")
    _even_n_guard(n, allow_even, "the gradient estimator")
    _check_rotation_index(circuit, k)
    rng = np.random.default_rng(rng)
    nq = circuit.n_qubits
    psi = _prepared_state(circuit)
    base_dist = bell_distribution(psi, psi)
    means, ses = [], []
    for sign in (+1.0, -1.0):
        shifted = _prepared_state(circuit.shifted(k, sign * np.pi / 2))
        mixed_dist = bell_distribution(shifted, psi)
        first = sample_bell(mixed_dist, repetitions, rng)
        if n > 1:
            rest = sample_bell(base_dist, (repetitions, n - 1), rng)
            xors = first ^ np.bitwise_xor.reduce(rest, axis=1)
        else:
            xors = first
        per_rep = _parity_values(xors, n, nq)
        means.append(float(np.mean(per_rep)))
        ses.append(float(np.std(per_rep, ddof=1) / np.sqrt(repetitions)) if repetitions > 1 else 0.0)
    value = n * (means[0] - means[1])
    se = n * math.hypot(ses[0], ses[1])
    return EstimatorResult(value, se, repetitions, 4 * n * repetitions, "gradient_shift", n, seed)


def expected_parity_value(dists: list[np.ndarray], n: int, n_qubits: int) -> float:
    """Infinite-shot expectation of the parity estimator built from one Bell
    sample of each distribution (XOR convolution against the parity weights)."""
    conv = xor_convolve(dists)
    values = _parity_values(np.arange(conv.shape[0]), n, n_qubits)
    return float(np.dot(conv, values))


def exact_moment_gradient(circuit: Circuit, k: int, n: int) -> float:
    """Infinite-shot shift-rule gradient of the n-th Pauli moment (any
    integer n >= 1); serves as the oracle for the sampled gradient."""
    if n < 1 or int(n) != n:
        raise ValueError("moment index must be a positive integer")
    _check_rotation_index(circuit, k)
    nq = circuit.n_qubits
    psi = _prepared_state(circuit)
    base = bell_distribution(psi, psi)
    sides = []
    for sign in (+1.0, -1.0):
        shifted = _prepared_state(circuit.shifted(k, sign * np.pi / 2))
        dists = [bell_distribution(shifted, psi)] + [base] * (n - 1)
        sides.append(expected_parity_value(dists, n, nq))
    return float(n * (sides[0] - sides[1]))


# -- further estimators ---------------------------------------------------------

def estimate_participation(
    state: np.ndarray, q: int, shots: int, rng, seed: int | None = None
) -> EstimatorResult:
    """Participation entropy I_q from computational-basis samples: disjoint
    groups of q shots score 1 when all q bitstrings coincide."""
    if q < 2 or int(q) != q:
        raise ValueError("q must be an integer >= 2")
    if shots < q:
        raise ValueError("need at least q shots")
    rng = np.random.default_rng(rng)
    psi = np.asarray(state, dtype=complex)
    probs = np.abs(psi) ** 2
    groups = shots // q
    draws = rng.choice(probs.shape[0], size=(groups, q), p=probs / probs.sum())
    hits = np.all(draws == draws[:, :1], axis=1).astype(float)
    return _result_from_samples(hits, groups * q, "participation", q, seed)


def estimate_flatness(state: np.ndarray, shots: int, rng, seed: int | None = None) -> EstimatorResult:
    """Multifractal flatness I_3 - I_2^2 from two participation estimators on
    split shot budgets, with the delta-method standard error."""
    rng = np.random.default_rng(rng)
    i3 = estimate_participation(state, 3, shots // 2, rng)
    i2 = estimate_participation(state, 2, shots - shots // 2, rng)
    value = i3.value - i2.value**2
    se = math.hypot(i3.std_error, 2.0 * i2.value * i2.std_error)
    return EstimatorResult(
        float(value), float(se), i3.shots + i2.shots,
        i3.copies_consumed + i2.copies_consumed, "flatness", None, seed,
    )


def estimate_bell_magic(
    state: np.ndarray, repetitions: int, rng, seed: int | None = None
) -> EstimatorResult:
    """Bell-magic estimator: each repetition draws two Bell-difference
    outcomes (two Bell samples each) and scores 2 when the corresponding Pauli
    strings anticommute."""
    rng = np.random.default_rng(rng)
    nq = n_qubits_of(state)
    dist = bell_distribution(state, state)
    outcomes = sample_bell(dist, (repetitions, 4), rng)
    q1 = outcomes[:, 0] ^ outcomes[:, 1]
    q2 = outcomes[:, 2] ^ outcomes[:, 3]
    # symplectic form on interleaved indices via pairwise bit masks
    pair_mask = spread_bits((1 << nq) - 1, nq)
    anti = (popcount((q1 >> 1) & q2 & pair_mask) + popcount(q1 & (q2 >> 1) & pair_mask)) % 2
    per_rep = 2.0 * anti
    return _result_from_samples(per_rep, 8 * repetitions, "bell_magic", None, seed)


def hoeffding_budget(epsilon: float, delta: float, delta_omega: float) -> int:
    """Repetition budget ceil((range^2 / 2 eps^2) ln(2/delta)) from Hoeffding's
    inequality."""
    if not (0 < epsilon < 1) or not (0 < delta < 1):
        raise ValueError("epsilon and delta must lie in (0, 1)")
    if delta_omega <= 0:
        raise ValueError("the outcome range must be positive")
    return int(math.ceil(delta_omega**2 / (2 * epsilon**2) * math.log(2 / delta)))


def renyi_precision_budget(
    renyi_target: float, n: int, epsilon_m: float, delta: float = 0.05, delta_omega: float = 2.0
) -> tuple[float, int]:
    """Moment precision and repetition budget needed to pin the Renyi entropy
    near the given value to within epsilon_m: eps = (n-1) e^{-M(n-1)} eps_M."""
    if n < 2:
        raise ValueError("needs n >= 2")
    eps = (n - 1) * math.exp(-renyi_target * (n - 1)) * epsilon_m
    return eps, hoeffding_budget(eps, delta, delta_omega)

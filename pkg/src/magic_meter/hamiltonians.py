"""Hamiltonians for the scrambling studies: GUE matrices, sums of random
Pauli strings, the disordered Heisenberg/Ising chain, and exact/Trotterized
time evolution."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .paulis import PauliString, apply_pauli, commutes, pauli_from_index, pauli_from_string
from .states import n_qubits_of

HERMITIAN_TOL = 1e-10
EVOLUTION_QUBIT_GUARD = 10


@dataclass(frozen=True)
class PauliSum:
    """Hamiltonian sum_k g_k sigma_k with real coefficients."""

    terms: tuple[tuple[float, PauliString], ...]
    n_qubits: int

    def __post_init__(self):
        for g, sigma in self.terms:
            if not np.isfinite(g):
                raise ValueError("coefficients must be finite")
            if sigma.n_qubits != self.n_qubits:
                raise ValueError("term width differs from Hamiltonian width")

    def to_dense(self) -> np.ndarray:
        dim = 1 << self.n_qubits
        h = np.zeros((dim, dim), dtype=complex)
        basis = np.eye(dim, dtype=complex)
        for g, sigma in self.terms:
            h += g * np.stack([apply_pauli(sigma, basis[:, k]) for k in range(dim)], axis=1)
        return h

    def apply(self, psi: np.ndarray) -> np.ndarray:
        out = np.zeros_like(psi, dtype=complex)
        for g, sigma in self.terms:
            out += g * apply_pauli(sigma, psi)
        return out


def dense_of(hamiltonian) -> np.ndarray:
    h = hamiltonian.to_dense() if isinstance(hamiltonian, PauliSum) else np.asarray(hamiltonian)
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL:
        raise ValueError("Hamiltonian is not Hermitian")
    return h


def gue_hamiltonian(n_qubits: int, rng) -> np.ndarray:
    """GUE draw scaled by 2^{-N/2} so the spectrum concentrates on [-2, 2]."""
    rng = np.random.default_rng(rng)
    dim = 1 << n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2 * dim**-0.5


def random_pauli_hamiltonian(n_qubits: int, n_terms: int, rng) -> PauliSum:
    """K distinct nonidentity Pauli strings with Gaussian weights, rescaled to
    unit normalized trace of H^2 (tr(H^2) = 2^N), the GUE energy scale."""
    if n_terms < 1:
        raise ValueError("need at least one term")
    if n_terms > 4**n_qubits - 1:
        raise ValueError("more terms than nonidentity Pauli strings")
    rng = np.random.default_rng(rng)
    indices = 1 + rng.choice(4**n_qubits - 1, size=n_terms, replace=False)
    coeffs = rng.normal(size=n_terms)
    scale = np.sqrt(np.sum(coeffs**2))  # sqrt(tr(H^2)/2^N) for distinct strings
    terms = tuple(
        (float(g / scale), pauli_from_index(int(p), n_qubits))
        for g, p in zip(coeffs, indices)
    )
    return PauliSum(terms, n_qubits)


def ising_hamiltonian(n_qubits: int, delta: float, disorder: float, rng) -> PauliSum:
    """Open-chain XXZ Heisenberg Hamiltonian with random longitudinal fields:
    sum_k (X_k X_{k+1} + Y_k Y_{k+1} + delta Z_k Z_{k+1}) + sum_k h_k Z_k,
    h_k uniform in [-W, W]."""
    if n_qubits < 2:
        raise ValueError("chain needs at least two sites")
    rng = np.random.default_rng(rng)
    fields = rng.uniform(-disorder, disorder, size=n_qubits)

    def site_string(ops: dict[int, str]) -> PauliString:
        chars = ["I"] * n_qubits
        for q, c in ops.items():
            chars[q - 1] = c
        return pauli_from_string("".join(chars))

    terms: list[tuple[float, PauliString]] = []
    for k in range(1, n_qubits):
        for axis in ("X", "Y"):
            terms.append((1.0, site_string({k: axis, k + 1: axis})))
        terms.append((float(delta), site_string({k: "Z", k + 1: "Z"})))
    for k in range(1, n_qubits + 1):
        terms.append((float(fields[k - 1]), site_string({k: "Z"})))
    return PauliSum(tuple(terms), n_qubits)


class Evolver:
    """Eigendecomposition of a Hamiltonian, reused across evolution times."""

    def __init__(self, hamiltonian):
        h = dense_of(hamiltonian)
        n = n_qubits_of(h)
        if n > EVOLUTION_QUBIT_GUARD:
            raise ValueError(f"dense evolution guarded to {EVOLUTION_QUBIT_GUARD} qubits")
        self.eigvals, self.eigvecs = np.linalg.eigh(h)

    def unitary(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.eigvals * t)
        return (self.eigvecs * phases) @ self.eigvecs.conj().T

    def evolve(self, t: float, psi: np.ndarray) -> np.ndarray:
        coeffs = self.eigvecs.conj().T @ psi
        return self.eigvecs @ (np.exp(-1j * self.eigvals * t) * coeffs)


def evolve(hamiltonian, t: float, psi: np.ndarray) -> np.ndarray:
    """exp(-i H t)|psi> via dense eigendecomposition."""
    return Evolver(hamiltonian).evolve(t, psi)


def commuting_groups(terms) -> list[list[tuple[float, PauliString]]]:
    """Greedy partition of Pauli terms into mutually commuting groups."""
    groups: list[list[tuple[float, PauliString]]] = []
    for g, sigma in terms:
        for group in groups:
            if all(commutes(sigma, tau) for _, tau in group):
                group.append((g, sigma))
                break
        else:
            groups.append([(g, sigma)])
    return groups


def trotter_evolve(hamiltonian: PauliSum, t: float, steps: int, psi: np.ndarray) -> np.ndarray:
    """First-order product formula over commuting groups of the Pauli sum."""
    if not isinstance(hamiltonian, PauliSum):
        raise ValueError("Trotterization needs a Pauli-sum Hamiltonian")
    if steps < 1:
        raise ValueError("need at least one step")
    dt = t / steps
    groups = commuting_groups(hamiltonian.terms)
    psi = np.asarray(psi, dtype=complex)
    for _ in range(steps):
        for group in groups:
            for g, sigma in group:
                half = g * dt
                psi = np.cos(half) * psi - 1j * np.sin(half) * apply_pauli(sigma, psi)
    return psi

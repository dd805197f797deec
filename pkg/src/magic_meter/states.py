"""Statevector and density-matrix constructors and small-system utilities.

States are plain numpy arrays: a length-2^N complex vector for pure states
(qubit 1 is the most significant bit of the basis index) or a 2^N x 2^N
matrix for mixed states.
"""
from __future__ import annotations

import numpy as np

NORM_TOL = 1e-10

STATEVECTOR_QUBIT_GUARD = 12
DENSITY_QUBIT_GUARD = 8


def n_qubits_of(state: np.ndarray) -> int:
    """Qubit count of a statevector or density matrix."""
    dim = np.asarray(state).shape[0]
    n = int(np.log2(dim))
    if 1 << n != dim:
        raise ValueError("dimension is not a power of two")
    return n


def check_state(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("expected a statevector")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise ValueError("statevector is not normalized")
    return psi


def check_density(rho: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("expected a square density matrix")
    if abs(np.trace(rho) - 1.0) > NORM_TOL:
        raise ValueError("density matrix trace differs from 1")
    if np.max(np.abs(rho - rho.conj().T)) > NORM_TOL:
        raise ValueError("density matrix is not Hermitian")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise ValueError("density matrix has negative eigenvalues")
    return rho


def zero_state(n_qubits: int) -> np.ndarray:
    psi = np.zeros(1 << n_qubits, dtype=complex)
    psi[0] = 1.0
    return psi


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    psi = np.zeros(1 << n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def plus_state(n_qubits: int) -> np.ndarray:
    dim = 1 << n_qubits
    return np.full(dim, dim**-0.5, dtype=complex)


def t_state(n_qubits: int = 1) -> np.ndarray:
    """|T>^{tensor n} with |T> = (|0> + e^{i pi/4} |1>)/sqrt(2)."""
    single = np.array([1.0, np.exp(1j * np.pi / 4)]) / np.sqrt(2)
    psi = single
    for _ in range(n_qubits - 1):
        psi = np.kron(psi, single)
    return psi


def haar_random_state(n_qubits: int, rng) -> np.ndarray:
    rng = np.random.default_rng(rng)
    dim = 1 << n_qubits
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density_matrix(n_qubits: int, rng, rank: int | None = None) -> np.ndarray:
    """Random mixed state from a Ginibre factor of the given rank."""
    rng = np.random.default_rng(rng)
    dim = 1 << n_qubits
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def density_of(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def conjugate_state(psi: np.ndarray) -> np.ndarray:
    """Element-wise complex conjugate in the computational basis."""
    return np.asarray(psi, dtype=complex).conj()


def maximally_entangled_state(n_qubits: int) -> np.ndarray:
    """2N-qubit state 2^{-N/2} sum_i |i>|i> (first register = first N qubits)."""
    dim = 1 << n_qubits
    phi = np.zeros(dim * dim, dtype=complex)
    phi[np.arange(dim) * dim + np.arange(dim)] = dim**-0.5
    return phi


def choi_state(unitary: np.ndarray) -> np.ndarray:
    """(I tensor U)|Phi> for a dense unitary; a 2N-qubit statevector.

    Amplitude on |i>|j> is U[j, i] / sqrt(2^N).
    """
    u = np.asarray(unitary, dtype=complex)
    n_qubits_of(u)  # validates the shape
    return (u.T / np.sqrt(u.shape[0])).reshape(-1)

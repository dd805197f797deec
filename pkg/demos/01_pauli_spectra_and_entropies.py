"""Tour of the basics: Pauli strings, spectra, and stabilizer entropies.

A state's Pauli spectrum Xi(sigma) = 2^-N <sigma>^2 is a probability
distribution over all 4^N Pauli strings.  Stabilizer states concentrate it on
2^N strings with weight 2^-N each; magic spreads it out.  The moments of the
spectrum give the Renyi and Tsallis stabilizer entropies.
"""
import numpy as np

from magic_meter import (
    apply_circuit,
    pauli_from_string,
    pauli_moment,
    pauli_spectrum,
    random_clifford_circuit,
    renyi_stabilizer_entropy,
    t_state,
    tsallis_stabilizer_entropy,
    zero_state,
)

# The single-qubit T state is the smallest magical example.
psi = t_state()
spectrum = pauli_spectrum(psi)
print("Pauli spectrum of |T>:")
for name in ("I", "X", "Z", "Y"):
    print(f"  Xi({name}) = {spectrum[pauli_from_string(name)]:.4f}")

print("\nmoments and entropies of |T>:")
for n in (2, 3, 4):
    print(
        f"  n={n}:  A_n = {pauli_moment(psi, n):.6f}"
        f"   M_n = {renyi_stabilizer_entropy(psi, n):.6f}"
        f"   T_n = {tsallis_stabilizer_entropy(psi, n):.6f}"
    )
print(f"  (A_2 = 3/4 and M_2 = ln(4/3) = {np.log(4 / 3):.6f} exactly)")

# Stabilizer states score exactly zero, and Clifford circuits cannot change
# any of these numbers.
rng = np.random.default_rng(1)
clifford = random_clifford_circuit(3, 10, rng)
stab = apply_circuit(clifford, zero_state(3))
print(f"\nrandom 3-qubit Clifford state: M_2 = {renyi_stabilizer_entropy(stab, 2):.2e}")

magical = np.kron(t_state(), zero_state(2))
rotated = apply_circuit(random_clifford_circuit(3, 10, rng), magical)
print(
    "Clifford invariance: M_2(|T,0,0>) = "
    f"{renyi_stabilizer_entropy(magical, 2):.10f} before, "
    f"{renyi_stabilizer_entropy(rotated, 2):.10f} after a random Clifford"
)

# Additivity: entropies add under tensor products.
a = t_state()
b = apply_circuit(random_clifford_circuit(2, 6, rng), zero_state(2))
print(
    "additivity check: "
    f"M_2(a (x) b) = {renyi_stabilizer_entropy(np.kron(a, b), 2):.10f}, "
    f"M_2(a) + M_2(b) = {renyi_stabilizer_entropy(a, 2) + renyi_stabilizer_entropy(b, 2):.10f}"
)

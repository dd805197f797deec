"""Bounds on magic monotones from one measurable moment.

Computing the stabilizer fidelity, extent or robustness exactly means
optimizing over all pure stabilizer states, which explodes beyond a few
qubits (6, 60, 1080 states for N = 1, 2, 3).  A single Pauli-spectrum moment
sandwiches the fidelity from both sides and lower-bounds the other two
monotones, at any qubit number.
"""
import numpy as np

from magic_meter import (
    bounds_report,
    d_min,
    doped_clifford_state,
    enumerate_stabilizer_states,
    stabilizer_fidelity,
    t_state,
)

for nq in (1, 2, 3):
    print(f"stabilizer states at N={nq}: {enumerate_stabilizer_states(nq).shape[0]}")

psi = t_state()
rep = bounds_report(psi, 2)
print(
    f"\n|T> with n=2: F_STAB in [{rep.fstab_lower:.5f}, {rep.fstab_upper:.5f}], "
    f"true value {stabilizer_fidelity(psi):.5f}"
)
print(
    f"  extent >= {rep.xi_lower:.5f}, robustness >= {rep.robustness_lower:.5f}, "
    f"D_min <= {rep.d_min_upper:.5f} (true D_min {d_min(psi):.5f})"
)

print("\ndoped-Clifford sweep at N = 3 (sandwich vs enumeration):")
print("  N_T   lower    F_STAB   upper    lower valid?")
for n_t in range(7):
    state = doped_clifford_state(3, n_t, np.random.default_rng([21, n_t]))
    rep = bounds_report(state, 3)
    f = stabilizer_fidelity(state)
    note = "vacuous" if rep.fstab_lower_vacuous else "ok"
    print(
        f"  {n_t:>3d}  {rep.fstab_lower:+.4f}  {f:.4f}   {rep.fstab_upper:.4f}   {note}"
    )
print("(the lower bound goes vacuous once enough T gates accumulate)")

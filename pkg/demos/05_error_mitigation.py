"""Error mitigation for entropy measurements on noisy states.

A global depolarizing channel shrinks every Pauli expectation uniformly, so
its effect on the spectrum moments inverts in closed form once the strength p
is known; p itself comes from a purity measurement.  The same inversion,
applied blindly under local noise it does not model, still removes most of
the error: the study below reports the mitigated/unmitigated error ratio.
"""
import numpy as np

from magic_meter import (
    NoiseKind,
    NoiseModel,
    apply_channel,
    density_of,
    doped_layered_circuit,
    estimate_p_from_purity,
    mitigate_moment,
    pauli_moment,
    purity,
    relative_error_study,
    t_state,
)

psi = np.kron(t_state(), t_state())
pure = pauli_moment(psi, 2)
print(f"pure A_2 of |T>|T|>: {pure:.6f}")
for p in (0.05, 0.1, 0.2):
    rho = apply_channel(density_of(psi), NoiseModel(NoiseKind.GLOBAL_DEPOLARIZING, p))
    noisy = pauli_moment(rho, 2)
    p_hat = estimate_p_from_purity(purity(rho), 2)
    fixed = mitigate_moment(noisy, p_hat, 2, 2)
    print(
        f"  p={p:.2f}: noisy {noisy:.6f} -> estimated p {p_hat:.4f} "
        f"-> mitigated {fixed:.6f} (error {fixed - pure:+.2e})"
    )

print("\nlocal-noise study (depth-12 doped circuits on 4 qubits):")
circuits = [doped_layered_circuit(4, 12, 4, np.random.default_rng([31, i])) for i in range(8)]
for kind, grid in (
    (NoiseKind.LOCAL_DEPOLARIZING, (2e-4, 1e-3)),
    (NoiseKind.DEPHASING, (2e-4, 1e-3)),
    (NoiseKind.AMPLITUDE_DAMPING, (3e-4, 1.5e-3)),
):
    records = relative_error_study(circuits, kind, grid, n=2)
    ratios = [r.ratio for r in records if r.ratio is not None]
    imps = [r.impurity for r in records]
    print(
        f"  {kind.value:20s} impurity {min(imps):.3f}..{max(imps):.3f} "
        f"median error ratio {np.median(ratios):.3f}"
    )
print("(ratios far below 1: the depolarizing inversion helps even off-model)")

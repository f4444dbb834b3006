"""
A tour of the qubit phase space
===============================

The two-level system is the one case where the kernel family has no moduli:
the sphere S_0(1) consists of the two points mu = +1 and mu = -1, and the
canonical (descending) choice mu = +1 fixes the kernel spectrum to
{(1 + sqrt(3))/2, (1 - sqrt(3))/2}.  This script builds that kernel, walks a
meridian of the Bloch sphere with the closed-form Wigner function, and then
recovers a state from nothing but Wigner values at Haar-random points.
"""

import numpy as np

from swphase import (
    EulerSU2,
    assemble_kernel,
    check_norm,
    gell_mann_basis,
    moduli_point,
    qubit_wf,
    reconstruct_state,
    rho_from_bloch,
    spectrum_from_moduli,
    state_wf_sampler,
    su2_coset,
    wigner_value,
)

basis = gell_mann_basis(2)
mu = moduli_point(2, [1.0])

# The kernel spectrum is independent of the phase-space point; only the
# eigenbasis rotates.  Both master equations (trace 1, purity N) are built in.
spec = spectrum_from_moduli(mu, basis)
print("qubit kernel eigenvalues:", np.round(spec.eigenvalues, 12))
print("exact:                   ", [(1 + np.sqrt(3)) / 2, (1 - np.sqrt(3)) / 2])
print()

# Walk the beta meridian (alpha = 0) for the spin-up state r = (0, 0, 1).
# The Wigner function of a pure state reaches (1 + sqrt(3))/2 at the state
# itself and dips to (1 - sqrt(3))/2 < 0 at the antipode: negativity is the
# signature of nonclassicality that survives even for a single qubit.
r_up = np.array([0.0, 0.0, 1.0])
print("W along the meridian for the spin-up state:")
for beta in np.linspace(0.0, np.pi, 7):
    w = qubit_wf(r_up, EulerSU2(alpha=0.0, beta=beta))
    print(f"  beta = {beta:5.3f}   W = {w:+.6f}")
print()

# The closed form agrees with the defining trace tr(rho Delta) at every point.
e = EulerSU2(alpha=1.1, beta=0.7)
kernel = assemble_kernel(mu, su2_coset(e).u, basis)
state = rho_from_bloch(2, np.array([0.3, -0.2, 0.4]))
print("closed form :", qubit_wf(state.bloch, e))
print("trace form  :", wigner_value(state, kernel))
print()

# Postulate (III) numerically: N * E[W] over Haar measure equals tr(rho) = 1.
norm = check_norm(state, mu, samples=50_000, seed=1)
print(f"norm check: N*E[W] = {norm.mc:.5f} +/- {norm.sigma:.5f}  (target 1)")
print()

# Postulate (I): the state is recoverable from its Wigner values alone.
sampler = state_wf_sampler(state, mu)
rec = reconstruct_state(sampler, 2, mu, samples=50_000, seed=2)
err = np.linalg.norm(rec.rho_hat - state.rho)
print("reconstructed density matrix (real part):")
print(np.round(rec.rho_hat.real, 4))
print(f"Frobenius error {err:.4f} (estimate {rec.frobenius_error_estimate:.4f})")

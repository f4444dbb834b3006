"""
Monte Carlo machinery behind the postulate checks
=================================================

Everything statistical in this package reduces to averages over Haar-random
special unitaries.  This script exercises that machinery directly: the
Weingarten closed forms for low-order moments (an independent oracle for the
sampler), the measure of the fundamental moduli domain, and the 1/sqrt(S)
convergence of state reconstruction.
"""

import numpy as np

from swphase import (
    haar_batch,
    moduli_domain_fraction,
    moduli_point,
    qutrit_mu,
    reconstruct_state,
    rho_from_bloch,
    state_wf_sampler,
    weingarten2_check,
    weingarten4_check,
)

# --- Haar moments -----------------------------------------------------------
# E[U_ij conj(U_kl)] = delta_ik delta_jl / N.  The sampler is counter-based,
# so the same (seed, index range) always yields the same unitaries, and a
# batch can be split across workers without changing a single sample.
batch = haar_batch(3, seed=0, start=0, count=4)
again = np.concatenate([haar_batch(3, seed=0, start=0, count=2),
                        haar_batch(3, seed=0, start=2, count=2)])
print("split batch identical to contiguous batch:", np.array_equal(batch, again))

mc = weingarten2_check(3, (1, 1, 1, 1), samples=100_000, seed=4)
print(f"2nd moment E[U11 conj(U11)]            = {mc.mc.real:+.6f} "
      f"(target {mc.closed_form:+.6f}, sigma {mc.sigma:.1e})")

# A 4th-order moment needs the full Weingarten function of S_2; the closed
# form 2/(N(N+1)) for the all-equal pattern is one of the identities the
# kernel normalization rests on.
mc = weingarten4_check(3, (1,) * 8, samples=100_000, seed=4)
print(f"4th moment E[|U11|^4]                  = {mc.mc.real:+.6f} "
      f"(target {mc.closed_form:+.6f}, sigma {mc.sigma:.1e})")
print()

# --- fundamental domain of the moduli sphere --------------------------------
# Sorting the kernel diagonal picks one representative per Weyl orbit, so a
# uniform moduli vector lands in the fundamental domain with probability 1/N!.
for n, target in ((3, 1.0 / 6.0), (4, 1.0 / 24.0)):
    frac = moduli_domain_fraction(n, samples=200_000, seed=3)
    print(f"N={n}: fraction of moduli sphere in the fundamental domain "
          f"= {frac:.5f} (1/{n}! = {target:.5f})")
print()

# --- reconstruction convergence ----------------------------------------------
# Averaging N * W(U) * Delta(U) over Haar samples recovers the state; the
# Frobenius error of the estimator shrinks like 1/sqrt(samples).
state = rho_from_bloch(3, np.array([0.2, -0.1, 0.25, 0.0, 0.1, -0.05, 0.15, 0.1]))
mu = qutrit_mu(-0.5)
sampler = state_wf_sampler(state, mu)
print("samples    Frobenius error   error * sqrt(samples)")
for samples in (4_000, 16_000, 64_000, 256_000):
    rec = reconstruct_state(sampler, 3, mu, samples=samples, seed=11)
    err = np.linalg.norm(rec.rho_hat - state.rho)
    print(f"{samples:7d}    {err:.6f}          {err * np.sqrt(samples):.3f}")

# The qubit works identically with the single canonical moduli point.
state2 = rho_from_bloch(2, np.array([0.5, 0.1, -0.6]))
mu2 = moduli_point(2, [1.0])
rec2 = reconstruct_state(state_wf_sampler(state2, mu2), 2, mu2,
                         samples=64_000, seed=11)
print(f"\nqubit at 64k samples: error {np.linalg.norm(rec2.rho_hat - state2.rho):.6f}, "
      f"internal estimate {rec2.frobenius_error_estimate:.6f}")

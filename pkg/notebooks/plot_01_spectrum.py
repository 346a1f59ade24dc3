"""
Spectrum of the deformed oscillator
===================================

Build the truncated Fock representation for the standard parameter set and
compare the closed-form energies with the eigenvalues of a^dag a + a a^dag.
"""

import numpy as np

from deformosc import STANDARD_A, build_rep, deformed_number, dual, energy, matrix_spectrum

prm = STANDARD_A
print(prm, prm.regime)

# The lowest ladder coefficient is sqrt([1]) = sqrt(16/7).
rep = build_rep(prm, 64)
print("down[1] =", rep.ladder.down[1])

# Closed form against the dense eigenvalues.  Level 0 is left out: with the
# lowest-weight vacuum the matrix eigenvalue there lacks [0] = 45/28.
ev = matrix_spectrum(rep)
for n in range(6):
    print(f"n={n}  E_n={energy(prm, n):.12f}  eig={ev[n]:.12f}")
print("vacuum gap:", energy(prm, 0) - ev[0], "  [0] =", deformed_number(0.0, prm))

# The energies are unchanged by the map to the dual regime.
gap = max(abs(energy(prm, n) - energy(dual(prm), n)) for n in range(30))
print("max duality gap over 30 levels:", gap)

# Near p = q = 1 the ladder approaches the ordinary oscillator, E_n = 2n + 1.
near = prm.with_(p=0.999, q=0.999, phi1=1.0, phi2=1.0)
print(np.array([energy(near, n) for n in range(6)]))

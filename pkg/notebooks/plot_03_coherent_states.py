"""
Coherent states
===============

Eigenvectors of the annihilation operator, their overlaps and the
continuity of z -> |z>.
"""

import numpy as np

from deformosc import (
    STANDARD_A,
    build_rep,
    coherent_state,
    continuity_modulus,
    eigen_residual,
    overlap,
    overlap_vector,
)

prm = STANDARD_A
rep = build_rep(prm, 100)

# The coefficient series is trimmed once a term falls below 1e-16 of the peak.
s = coherent_state(prm, 0.5)
print("terms kept:", s.terms, " truncation estimate:", s.truncation_estimate)
print("||a v - z v|| / ||v|| =", eigen_residual(rep, s))

# Overlap from the normalizing series against the plain inner product.
for z1, z2 in [(0.4, 0.2), (0.3 + 0.4j, -0.5j)]:
    print(z1, z2, overlap(prm, z1, z2), overlap_vector(prm, z1, z2))

# Halving the step roughly halves the distance between neighbouring states.
for dz in (1e-2, 5e-3, 2.5e-3):
    c = continuity_modulus(prm, 0.3, dz)
    print(f"dz={dz:g}  modulus={c.value:.3e}  agreement={c.agreement:.1e}")

print(np.round(np.abs(s.vector()[:6]), 6))

"""
Casimir-modulated structure functions
=====================================

phi1 = (1 + 2 gamma w2) p^-beta and phi2 = (1 + 2 gamma w2) q^beta.  The two
energy forms are compared over a small (beta, gamma) grid.
"""

from deformosc import STANDARD_A, CasimirParams, casimir_energy, effective_params
from deformosc.casimir import BETA_GRID, GAMMA_GRID, check_factorial_sign_identity, deformed_factorial

cp = CasimirParams(STANDARD_A, beta=0.5, gamma=0.1, omega2=1.0)
eff = effective_params(cp)
print("phi1 =", eff.phi1, " phi2 =", eff.phi2)

for beta in BETA_GRID:
    for gamma in GAMMA_GRID:
        c = CasimirParams(STANDARD_A, beta, gamma)
        worst = max(abs(a - b) / abs(a) for a, b in (casimir_energy(c, n) for n in range(51)))
        print(f"beta={beta:.1f} gamma={gamma:.1f}  E_0={casimir_energy(c, 0)[0]:.6f}  worst gap {worst:.1e}")

# The deformed factorial starts at the overall scale and obeys a sign identity.
print([round(deformed_factorial(cp, m), 6) for m in range(5)])
print(max(check_factorial_sign_identity(cp, m) for m in range(9)))

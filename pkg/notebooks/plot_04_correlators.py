"""
Matrix elements of ordered products
===================================

Closed forms for <r| (a^dag)^m a^n |s> and <r| a^n (a^dag)^m |s>, checked
against dense products, and coherent-state expectation values.
"""

import numpy as np

from deformosc import (
    STANDARD_A,
    MatrixElementQuery,
    build_rep,
    dual,
    expectation,
    matrix_element,
    oracle_matrix_element,
    sweep_branches,
)

prm = STANDARD_A
rep = build_rep(prm, 40)

q = MatrixElementQuery(m=1, n=1, r=1, s=1, ordering="normal")
print("<1|a^dag a|1> =", matrix_element(prm, q), "(16/7 =", 16 / 7, ")")

q = MatrixElementQuery(m=2, n=1, r=2, s=1, ordering="antinormal")
print("closed", matrix_element(prm, q), " dense", oracle_matrix_element(rep, q))

# a^2 annihilates |1>; the printed expression would give a nonzero value here.
q = MatrixElementQuery(m=2, n=2, r=1, s=1)
print("printed", matrix_element(prm, q, form="printed"), " corrected", matrix_element(prm, q))

# Branch sweep in both regimes.
for member in (prm, dual(prm)):
    for e in sweep_branches(member).entries:
        print(f"{e.status:18} {e.max_rel_residual:9.2e}  {e.identity_name}")

# Normal-ordered expectations in a coherent state reduce to conj(z)^m z^n.
z = 0.3 - 0.4j
print(expectation(prm, z, 2, 1), np.conj(z) ** 2 * z)

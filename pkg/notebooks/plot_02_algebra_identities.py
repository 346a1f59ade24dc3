"""
Checking operator identities with dense matrices
================================================

Every algebra identity is evaluated as a matrix product and compared on the
columns the truncation cannot reach.  Printed forms that do not match are
reported as erratum candidates along with the best-fitting variant.
"""

from deformosc import STANDARD_A, build_rep, vacuum_consistent_chi0
from deformosc.algebra import safe_columns, verify_algebra, verify_defining_relations

rep = build_rep(STANDARD_A, 64)

# a a^dag climbs one level before dropping back, so the top column is lost.
cols, guard = safe_columns(rep, [[1, -1], [-1, 1]])
print("checked columns", cols[0], "..", cols[-1], "guard band", guard)

report = verify_defining_relations(rep)
for e in report.entries:
    print(f"{e.status:12} {e.max_rel_residual:9.2e}  {e.identity_name}")

# Choosing chi0 so that [alpha chi0] = 0 makes the vacuum consistent too.
star = STANDARD_A.with_(chi0=vacuum_consistent_chi0(STANDARD_A))
print("chi0* =", star.chi0)
for e in verify_defining_relations(build_rep(star, 64)).entries:
    print(f"{e.status:12} {e.max_rel_residual:9.2e}  {e.identity_name}")

# The full battery; only the erratum candidates are listed.
full = verify_algebra(rep)
print(len(full.entries), "entries, ok =", full.ok)
for e in full.errata:
    print(f"{e.max_rel_residual:9.2e} -> {e.variant_residual:9.2e}  {e.identity_name}  [{e.best_variant}]")

"""
kappa along a Teichmueller disk
===============================

Along t -> f_{3,t} the Grunsky norm is squeezed between alpha r and
r (r + alpha)/(1 + alpha r), alpha = 2 sqrt(2)/3.  Which end does it follow?
"""

from grunsky import FamilySpec, theorem1_discrimination, verify_theorem1

spec = FamilySpec("power", 0, 3)

# %%
report = verify_theorem1(spec, N=32)
print(f"alpha = {report.alpha:.12f}")
for row in report.rows:
    print(f"r = {row.r:.1f}  lower = {row.lower:.6f}  kappa = {row.kappa:.6f}  "
          f"upper = {row.upper:.6f}  position = {row.position:.3f}  ok = {row.sandwich_ok}")

# %%
# At r = 0.6 the ladder has converged to ~1e-9 and sits strictly inside the
# envelope: neither endpoint is attained.
print(theorem1_discrimination(spec, 0.6).summary())

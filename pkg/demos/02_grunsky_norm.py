"""
Grunsky coefficients and the Grunsky norm
=========================================

For f(z) = z + t/z the Grunsky matrix is diag(t, t^2, ...), so kappa = |t|.
For f_{3,t}(z) = z (1 + t/z^3)^{2/3} the truncated norms climb with N.
"""

import numpy as np

from grunsky import FamilySpec, family_map, grunsky_coefficients, grunsky_norm

# %%
f = family_map(FamilySpec("joukowski", 0.5), 5)
print(np.round(grunsky_coefficients(f, 3).alpha.real, 6))

# %%
# The truncation ladder. Smaller N are leading blocks of the same matrix, so
# the sequence is nondecreasing; nothing is extrapolated.
g = family_map(FamilySpec("power", 0.6, 3), 95)
report = grunsky_norm(g, (2, 4, 8, 16, 32, 48), k_bound=0.6)
for N, kappa in report.rows:
    print(f"N = {N:2d}  kappa_N = {kappa:.15f}")
print("univalence violated:", report.univalence_violated)

# %%
# Threefold symmetry: alpha_mn vanishes unless m + n is divisible by 3.
alpha = grunsky_coefficients(g, 6).alpha
print((np.abs(alpha) > 1e-13).astype(int))

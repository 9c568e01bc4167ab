"""
The metric lambda_kappa and its integral
========================================

lambda_kappa(r) = sup_x |h_x'(r)| / (1 - |h_x(r)|^2), estimated from below
by Takagi candidates, random vectors and gradient refinement.  Integrating
it from 0 to r should give atanh(kappa(r)).
"""

import math

import numpy as np

from grunsky import FamilySpec, lemma4_check, metric_lambda_kappa

alpha = 2 * math.sqrt(2) / 3


def comparison_metric(r, a=alpha):
    j = r * (r + a) / (1 + a * r)
    dj = ((2 * r + a) * (1 + a * r) - a * (r * r + a * r)) / (1 + a * r) ** 2
    return dj / (1 - j * j)


# %%
# joukowski reproduces the hyperbolic density exactly.
for r in (0.1, 0.4):
    print(r, metric_lambda_kappa(FamilySpec("joukowski"), r, 8).lambda_est, 1 / (1 - r * r))

# %%
# power:3 stays between alpha and the pulled-back comparison metric.  Its
# first-order expansion is alpha + 2 (1 - alpha^2) r.
spec = FamilySpec("power", 0, 3)
for r in np.linspace(0, 0.5, 6):
    lam = metric_lambda_kappa(spec, r, 16).lambda_est
    print(f"r = {r:.1f}  lambda = {lam:.6f}  comparison = {comparison_metric(r):.6f}")

# %%
rep = lemma4_check(spec, 0.5, 32, 16)
print(f"atanh(kappa) = {rep.lhs:.6f}, integral = {rep.rhs:.6f}, residual = {rep.residual:.2e}")

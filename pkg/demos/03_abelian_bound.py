"""
The abelian-differential lower bound
====================================

sup |<mu, omega^2>| over unit-norm holomorphic omega, restricted to
polynomials of degree < N, is the top singular value of a Hankel-like
matrix built from the moments of mu.
"""

import numpy as np

from grunsky import BeltramiSpec, PolarTerm, alpha_norm, beltrami_moments, extremal_omega, pairing

# %%
# mu = e^{-i theta}: only the (1, 2) entry is nonzero and the bound is 2 sqrt(2)/3.
mu = BeltramiSpec.polar([PolarTerm(1.0, 0, -1)])
print(beltrami_moments(mu, 3).values)
res = alpha_norm(mu, 4)
print(res.sigma, 2 * np.sqrt(2) / 3)

# %%
# The maximizing differential: psi is the square of a nonconstant linear
# polynomial, normalized to unit L^1 norm on the disk.
ext = extremal_omega(res)
print("omega:", np.round(ext.omega, 6))
print("psi:  ", np.round(ext.psi, 6))
print("|<mu, psi>| =", abs(pairing(mu, ext.psi)))

# %%
# A constant coefficient is already of Teichmueller form: alpha = |t|.
print(alpha_norm(BeltramiSpec.polar([PolarTerm(0.7, 0, 0)]), 8).sigma)

"""
The map catalog
===============

joukowski: f = z + t/z, extended by z + t conj(z).
power:m:   f = z (1 + t/z^m)^{2/m}, extended by replacing z^m with |z|^m.

Beltrami coefficients are checked against finite differences of the
extension; for m > 3 they are only available through that oracle.
"""

import numpy as np

from grunsky import FamilySpec, beltrami_oracle, bnorm, family_beltrami, family_map, schwarzian

# %%
spec = FamilySpec("power", 0.6, 3)
print(np.round(family_map(spec, 8).tail.real, 6))

# %%
# Closed form t e^{-i theta} against the oracle on a 16 x 64 grid.
r = (np.arange(16) + 0.5) / 16
theta = 2 * np.pi * np.arange(64) / 64
z = r[:, None] * np.exp(1j * theta)[None, :]
oracle = beltrami_oracle(spec, r, theta)
print("max deviation:", np.max(np.abs(family_beltrami(spec)(z) - oracle.samples)))

# %%
# m = 5: a single polar term is fitted to the oracle.
mu5 = family_beltrami(FamilySpec("power", 0.6, 5))
print(mu5.terms, "fit residual:", mu5.fit_residual)

# %%
# Schwarzian and a grid lower bound for its B-norm.
f = family_map(spec, 300)
print(schwarzian(f, np.array([1.5, 2j])))
print(bnorm(f))

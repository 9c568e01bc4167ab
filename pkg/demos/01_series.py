"""
Truncated power series
======================

The Grunsky coefficients are read off a bivariate logarithm, so everything
starts with box-truncated series in two variables.
"""

from fractions import Fraction

import numpy as np

from grunsky import BivariateSeries, bivar_log, bivar_mul, series_binomial

# %%
# Binomial series. Rational exponents are expanded exactly, then rounded once.
print(series_binomial(Fraction(2, 3), 5).coeffs.real)

# %%
# (1 + uv)^2 in the box u, v <= 2.
a = BivariateSeries.one(2)
a.coeffs[1, 1] = 1
print(bivar_mul(a, a).coeffs.real)

# %%
# log(1 - t uv) only has diagonal terms -t^k / k.
t = 0.5
b = BivariateSeries.one(4)
b.coeffs[1, 1] = -t
print(np.diag(bivar_log(b).coeffs)[1:].real)
print([-t**k / k for k in range(1, 5)])

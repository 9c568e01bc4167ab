"""
Fredholm eigenvalues
====================

rho = 1/kappa is an upper bound for the first Fredholm eigenvalue of the
image curve (kappa_N approaches kappa from below).  For the catalog the
abelian bound gives a second estimate 1/alpha.
"""

from grunsky import FamilySpec, LaurentMap, fredholm_eigenvalue

print(fredholm_eigenvalue(FamilySpec("joukowski", 0.5)))   # ellipse: rho = 2
print(fredholm_eigenvalue(FamilySpec("power", 0.6, 3), N=32))
print(fredholm_eigenvalue(LaurentMap.identity(31)).is_circle)

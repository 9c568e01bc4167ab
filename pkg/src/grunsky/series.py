"""Truncated complex power series in one and two variables.

Univariate series are truncated modulo ``u**(D+1)``.  Bivariate series use
box truncation: a coefficient ``c[m, n]`` of ``u**m v**n`` is kept iff
``m <= D`` and ``n <= D``.  Every operation truncates identically, so the
arithmetic is exact modulo the truncation ideal (up to floating point).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import numpy as np

__all__ = [
    "SeriesError",
    "UnivariateSeries",
    "BivariateSeries",
    "series_binomial",
    "bivar_mul",
    "bivar_log",
]


class SeriesError(ValueError):
    """Raised for mismatched truncations or an invalid logarithm branch."""


class UnivariateSeries:
    """Truncated series ``c_0 + c_1 u + ... + c_D u**D``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise SeriesError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise SeriesError("series coefficients must be finite")
        self.coeffs = c

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def one(cls, degree_bound: int) -> UnivariateSeries:
        c = np.zeros(degree_bound + 1, dtype=complex)
        c[0] = 1.0
        return cls(c)

    def _check(self, other: UnivariateSeries) -> None:
        if other.degree_bound != self.degree_bound:
            raise SeriesError(
                f"degree bounds differ: {self.degree_bound} != {other.degree_bound}"
            )

    def __add__(self, other):
        if isinstance(other, UnivariateSeries):
            self._check(other)
            return UnivariateSeries(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0] += other
        return UnivariateSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return UnivariateSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UnivariateSeries):
            self._check(other)
            n = self.coeffs.size
            return UnivariateSeries(np.convolve(self.coeffs, other.coeffs)[:n])
        return UnivariateSeries(self.coeffs * other)

    __rmul__ = __mul__

    def reciprocal(self) -> UnivariateSeries:
        """Multiplicative inverse; requires a nonzero constant term."""
        c = self.coeffs
        if c[0] == 0:
            raise SeriesError("reciprocal of a series with zero constant term")
        out = np.zeros_like(c)
        out[0] = 1.0 / c[0]
        for j in range(1, c.size):
            out[j] = -np.dot(c[1 : j + 1], out[j - 1 :: -1][:j]) / c[0]
        return UnivariateSeries(out)

    def __call__(self, u):
        return np.polynomial.polynomial.polyval(u, self.coeffs)

    def __repr__(self):
        return f"UnivariateSeries({self.coeffs!r})"


def series_binomial(gamma, coeff_count: int) -> UnivariateSeries:
    """Coefficients of ``(1 + u)**gamma`` on the principal branch.

    Rational ``gamma`` (``int`` or ``Fraction``) is expanded in exact rational
    arithmetic before conversion to floating point.

    >>> series_binomial(Fraction(2, 3), 3).coeffs.real
    array([ 1.        ,  0.66666667, -0.11111111])
    """
    if coeff_count < 1:
        raise SeriesError("coeff_count must be >= 1")
    exact = isinstance(gamma, Rational)
    g = Fraction(gamma) if exact else complex(gamma)
    term = Fraction(1) if exact else 1.0 + 0j
    out = [term]
    for j in range(1, coeff_count):
        term = term * (g - (j - 1)) / j
        out.append(term)
    return UnivariateSeries([complex(x) for x in out])


@lru_cache(maxsize=16)
def _toeplitz_index(degree_bound: int):
    n = np.arange(degree_bound + 1)
    diff = n[:, None] - n[None, :]
    mask = diff >= 0
    return np.where(mask, diff, 0), mask


class BivariateSeries:
    """Box-truncated series ``sum c[m, n] u**m v**n`` with ``m, n <= D``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise SeriesError(f"expected a square coefficient array, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise SeriesError("series coefficients must be finite")
        self.coeffs = c

    @property
    def degree_bound(self) -> int:
        return self.coeffs.shape[0] - 1

    @classmethod
    def zero(cls, degree_bound: int) -> BivariateSeries:
        return cls(np.zeros((degree_bound + 1, degree_bound + 1), dtype=complex))

    @classmethod
    def one(cls, degree_bound: int) -> BivariateSeries:
        s = cls.zero(degree_bound)
        s.coeffs[0, 0] = 1.0
        return s

    def _check(self, other: BivariateSeries) -> None:
        if other.degree_bound != self.degree_bound:
            raise SeriesError(
                f"degree bounds differ: {self.degree_bound} != {other.degree_bound}"
            )

    def __add__(self, other):
        if isinstance(other, BivariateSeries):
            self._check(other)
            return BivariateSeries(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0, 0] += other
        return BivariateSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return BivariateSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BivariateSeries):
            return bivar_mul(self, other)
        return BivariateSeries(self.coeffs * other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __repr__(self):
        return f"BivariateSeries(degree_bound={self.degree_bound})"


def bivar_mul(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    """Product of two box-truncated bivariate series."""
    a._check(b)
    D = a.degree_bound
    idx, mask = _toeplitz_index(D)
    # toep[p] convolves a row of b with row p of a in the v-direction
    toep = np.where(mask, a.coeffs[:, idx], 0)
    out = np.zeros_like(a.coeffs)
    bc = b.coeffs
    for p in range(D + 1):
        if np.any(a.coeffs[p]):
            out[p:] += bc[: D + 1 - p] @ toep[p].T
    return BivariateSeries(out)


def bivar_log(a: BivariateSeries) -> BivariateSeries:
    """Principal logarithm of a series with constant term exactly 1.

    Sums the Mercator series ``w - w**2/2 + w**3/3 - ...`` with ``w = a - 1``;
    since ``w`` has no constant term its powers vanish in the box after at
    most ``2D`` steps, and the loop stops as soon as one does.
    """
    if a.coeffs[0, 0] != 1:
        raise SeriesError(f"log needs constant term 1, got {a.coeffs[0, 0]!r}")
    w = a - 1
    out = BivariateSeries(w.coeffs.copy())
    power = w
    for k in range(2, 2 * a.degree_bound + 1):
        power = bivar_mul(power, w)
        if power.is_zero():
            break
        sign = 1.0 if k % 2 else -1.0
        out.coeffs += (sign / k) * power.coeffs
    return out

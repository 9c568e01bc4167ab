"""Supremum of ``|<mu, omega**2>|`` over unit-norm holomorphic ``omega``.

With ``omega(z) = sum_n x_n sqrt(n/pi) z**(n-1)`` one has ``|omega|_2 = |x|``
and ``omega**2 = (1/pi) sum sqrt(mn) x_m x_n z**(m+n-2)``, so

    <mu, omega**2> = x^T B x,   B[m, n] = sqrt(mn)/pi * M[m+n-2],

where ``M[p]`` is the moment ``iint_D mu(z) z**p dx dy``.  Restricting
``omega`` to polynomials of degree ``< N`` gives the ``N x N`` matrix ``B``,
and the supremum is its largest singular value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .takagi import SymmetricNormResult, symmetric_bilinear_norm

__all__ = [
    "ResolutionError",
    "PolarTerm",
    "BeltramiSpec",
    "MomentVector",
    "AbelianMatrix",
    "ExtremalDifferential",
    "disk_quadrature",
    "beltrami_moments",
    "quadrature_moments",
    "abelian_matrix",
    "alpha_norm",
    "extremal_omega",
    "pairing",
]

RADIAL_ORDER = 64
ANGULAR_NODES = 512


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class PolarTerm:
    """``c * r**a * exp(i k theta)`` on the unit disk."""

    c: complex
    a: float = 0.0
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "k", int(self.k))
        if self.a < 0:
            raise ValueError("radial exponent must be >= 0")


@lru_cache(maxsize=8)
def disk_quadrature(radial_order: int = RADIAL_ORDER, angular_nodes: int = ANGULAR_NODES):
    """Gauss-Legendre in ``s = sqrt(r)`` times the trapezoid rule in ``theta``.

    Returns ``(r, theta, w_r)``; the area weight of node ``(i, j)`` is
    ``w_r[i] * r[i] * 2 pi / angular_nodes``.  The substitution ``r = s**2``
    turns radial factors ``r**a`` with fractional ``a`` into smooth
    integrands, which plain Gauss-Legendre in ``r`` resolves only to ~1e-9.
    """
    x, w = np.polynomial.legendre.leggauss(radial_order)
    s = 0.5 * (x + 1)
    theta = 2 * np.pi * np.arange(angular_nodes) / angular_nodes
    return s**2, theta, s * w


class BeltramiSpec:
    """A Beltrami coefficient on the unit disk, zero outside it.

    Either a finite sum of :class:`PolarTerm` (``polar``) or a vectorized
    callable ``z -> mu(z)`` (``sampled``).  ``sup_norm`` must dominate
    ``|mu|`` on a 64 x 256 polar validation grid and may not exceed 1;
    the closed unit ball is admitted so that normalized coefficients
    ``mu / |mu|_inf`` can be represented.
    """

    def __init__(self, terms=None, func=None, sup_norm=None, samples=None):
        if (terms is None) == (func is None):
            raise ValueError("give exactly one of terms / func")
        self.terms = tuple(terms) if terms is not None else None
        self.func = func
        self.samples = samples
        self.fit_residual = None
        if sup_norm is None:
            if self.terms is not None:
                sup_norm = sum(abs(tm.c) for tm in self.terms)
            else:
                sup_norm = float(np.max(np.abs(self(_validation_grid()))))
        self.sup_norm = float(sup_norm)
        if not 0 <= self.sup_norm <= 1 + 1e-12:
            raise ValueError(f"sup norm must lie in [0, 1], got {self.sup_norm}")
        observed = float(np.max(np.abs(self(_validation_grid())), initial=0.0))
        if observed > self.sup_norm * (1 + 1e-12) + 1e-15:
            raise ValueError(
                f"declared sup norm {self.sup_norm} is below the sampled maximum {observed}"
            )

    @classmethod
    def polar(cls, terms, sup_norm=None) -> BeltramiSpec:
        return cls(terms=[t if isinstance(t, PolarTerm) else PolarTerm(*t) for t in terms],
                   sup_norm=sup_norm)

    @classmethod
    def sampled(cls, func, sup_norm=None, samples=None) -> BeltramiSpec:
        return cls(func=func, sup_norm=sup_norm, samples=samples)

    @property
    def is_polar(self) -> bool:
        return self.terms is not None

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        inside = np.abs(z) < 1
        if self.terms is not None:
            r, th = np.abs(z), np.angle(z)
            out = np.zeros_like(z)
            for tm in self.terms:
                out = out + tm.c * r**tm.a * np.exp(1j * tm.k * th)
        else:
            out = np.zeros_like(z)
            if np.any(inside):
                out[inside] = self.func(z[inside])
        return np.where(inside, out, 0)

    def scaled(self, s) -> BeltramiSpec:
        s = complex(s)
        if self.terms is not None:
            return BeltramiSpec.polar(
                [PolarTerm(tm.c * s, tm.a, tm.k) for tm in self.terms], self.sup_norm * abs(s)
            )
        f = self.func
        return BeltramiSpec.sampled(lambda z: s * f(z), self.sup_norm * abs(s))

    def normalized(self) -> BeltramiSpec:
        """``mu / |mu|_inf`` using the declared sup norm."""
        if self.sup_norm == 0:
            raise ZeroDivisionError("cannot normalize the zero Beltrami coefficient")
        return self.scaled(1 / self.sup_norm)

    def rotated(self, phi: float) -> BeltramiSpec:
        """``z -> mu(exp(i phi) z)``."""
        if self.terms is not None:
            return BeltramiSpec.polar(
                [PolarTerm(tm.c * np.exp(1j * tm.k * phi), tm.a, tm.k) for tm in self.terms],
                self.sup_norm,
            )
        f, rot = self.func, np.exp(1j * phi)
        return BeltramiSpec.sampled(lambda z: f(rot * z), self.sup_norm)

    def __repr__(self):
        kind = f"terms={self.terms!r}" if self.terms is not None else "sampled"
        return f"BeltramiSpec({kind}, sup_norm={self.sup_norm!r})"


@lru_cache(maxsize=1)
def _validation_grid():
    # radial midpoints: finite-difference samplers are singular at the origin
    r = (np.arange(64) + 0.5) / 64
    theta = 2 * np.pi * np.arange(256) / 256
    return r[:, None] * np.exp(1j * theta)[None, :]


@dataclass(frozen=True)
class MomentVector:
    """``M[p] = iint_D mu(z) z**p dx dy`` for ``p = 0..P``."""

    values: np.ndarray

    @property
    def P(self) -> int:
        return self.values.size - 1


@dataclass(frozen=True)
class AbelianMatrix:
    entries: np.ndarray

    @property
    def N(self) -> int:
        return self.entries.shape[0]


def quadrature_moments(spec: BeltramiSpec, P: int, radial_order: int = RADIAL_ORDER,
                       angular_nodes: int = ANGULAR_NODES) -> MomentVector:
    """Moments by Gauss-Legendre x trapezoid quadrature, for any spec."""
    if angular_nodes < 4 * max(P, 1):
        raise ResolutionError(
            f"{angular_nodes} angular nodes cannot resolve moments up to p = {P}; need >= {4 * P}"
        )
    r, theta, wr = disk_quadrature(radial_order, angular_nodes)
    z = r[:, None] * np.exp(1j * theta)[None, :]
    vals = spec(z)
    # angular sums of mu * exp(i p theta) for every p at once
    ang = 2 * np.pi * np.fft.ifft(vals, axis=1)[:, : P + 1]
    p = np.arange(P + 1)
    rad = wr[:, None] * r[:, None] ** (p[None, :] + 1)
    return MomentVector(np.sum(rad * ang, axis=0))


def beltrami_moments(spec: BeltramiSpec, P: int) -> MomentVector:
    """Moments ``M[0..P]``; exact for polar specs, quadrature otherwise.

    A polar term ``c r**a e^{i k theta}`` contributes ``2 pi c / (a + p + 2)``
    to ``M[p]`` when ``k + p == 0`` and nothing otherwise.
    """
    if P < 0:
        raise ValueError("P must be >= 0")
    if not spec.is_polar:
        return quadrature_moments(spec, P)
    out = np.zeros(P + 1, dtype=complex)
    for tm in spec.terms:
        p = -tm.k
        if 0 <= p <= P:
            out[p] += 2 * np.pi * tm.c / (tm.a + p + 2)
    return MomentVector(out)


def abelian_matrix(moments: MomentVector, N: int) -> AbelianMatrix:
    if moments.P < 2 * N - 2:
        raise ValueError(f"N = {N} needs moments up to p = {2 * N - 2}, have {moments.P}")
    n = np.arange(1, N + 1)
    hankel = moments.values[n[:, None] + n[None, :] - 2]
    return AbelianMatrix(np.sqrt(n[:, None] * n[None, :]) / np.pi * hankel)


def alpha_norm(spec: BeltramiSpec, N: int, *, seed: int = 0) -> SymmetricNormResult:
    """``sup |<mu, omega**2>|`` over unit ``omega`` of degree ``< N``."""
    B = abelian_matrix(beltrami_moments(spec, 2 * N - 2), N)
    return symmetric_bilinear_norm(B.entries, seed=seed)


@dataclass(frozen=True)
class ExtremalDifferential:
    """Coefficients (ascending powers of ``z``) of ``omega`` and ``psi = omega**2``."""

    omega: np.ndarray
    psi: np.ndarray
    a1_norm: float
    degenerate: bool = False


def _abs_integral(coeffs) -> float:
    r, theta, wr = disk_quadrature()
    z = r[:, None] * np.exp(1j * theta)[None, :]
    vals = np.abs(np.polynomial.polynomial.polyval(z, coeffs))
    return float(np.sum(wr[:, None] * r[:, None] * vals) * 2 * np.pi / theta.size)


def extremal_omega(result: SymmetricNormResult, N: int | None = None) -> ExtremalDifferential:
    """The abelian differential ``omega`` and ``psi = omega**2`` from a maximizer.

    ``psi`` is rescaled to unit ``A_1`` norm by quadrature; ``a1_norm`` is the
    norm measured before rescaling, which should be 1 since ``|x| = 1``.
    A zero matrix has no maximizer and yields a degenerate, empty result.
    """
    if result.degenerate:
        empty = np.zeros(0, dtype=complex)
        return ExtremalDifferential(empty, empty, 0.0, degenerate=True)
    x = np.asarray(result.argmax_x, dtype=complex)
    if N is not None:
        x = x[:N]
    n = np.arange(1, x.size + 1)
    omega = x * np.sqrt(n / np.pi)
    psi = np.convolve(omega, omega)
    norm = _abs_integral(psi)
    return ExtremalDifferential(omega / np.sqrt(norm), psi / norm, norm)


def pairing(spec: BeltramiSpec, psi_coeffs) -> complex:
    """``iint_D mu psi dx dy`` by quadrature; ``psi`` is a polynomial."""
    psi_coeffs = np.asarray(psi_coeffs, dtype=complex)
    if psi_coeffs.size == 0 or not np.any(psi_coeffs):
        return 0j
    r, theta, wr = disk_quadrature()
    z = r[:, None] * np.exp(1j * theta)[None, :]
    vals = spec(z) * np.polynomial.polynomial.polyval(z, psi_coeffs)
    return complex(np.sum(wr[:, None] * r[:, None] * vals) * 2 * np.pi / theta.size)

"""Closed-form catalog of maps with explicit quasiconformal extensions.

* ``joukowski``: ``f_t(z) = z + t/z`` on ``|z| > 1``, extended by ``z + t conj(z)``.
* ``power:m`` (odd ``m >= 3``): ``f(z) = z (1 + t z**-m)**(2/m)``, extended by
  ``z (1 + t (|z|/z)**m)**(2/m)`` inside the disk.

Only the ``m = 3`` dilatation ``t |z|/z`` is taken as known; for ``m > 3`` the
dilatation is measured from the extension by finite differences and fitted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .abelian import BeltramiSpec, PolarTerm, _validation_grid
from .core import LaurentMap
from .series import series_binomial

__all__ = [
    "FamilySpec",
    "SingularPointError",
    "parse_family",
    "parse_complex",
    "family_map",
    "family_beltrami",
    "beltrami_oracle",
    "oracle_dilatation",
    "schwarzian",
    "BNormEstimate",
    "bnorm",
]

FIT_TOLERANCE = 1e-8


class SingularPointError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    t: complex = 0j
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "t", complex(self.t))
        if self.family not in ("joukowski", "power"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "power" and (self.m < 3 or self.m % 2 == 0):
            raise ValueError(f"power family needs odd m >= 3, got {self.m}")
        if abs(self.t) >= 1:
            raise ValueError(f"|t| must be < 1, got {self.t}")

    @property
    def name(self) -> str:
        return "joukowski" if self.family == "joukowski" else f"power:{self.m}"

    def at(self, t) -> FamilySpec:
        return replace(self, t=complex(t))

    def extension(self, z):
        """Closed-form map on the whole plane (extension inside the unit disk)."""
        z = np.asarray(z, dtype=complex)
        inside = np.abs(z) < 1
        out = self.exterior(np.where(inside, 2.0, z))
        if np.any(inside):
            zi = z[inside]
            if self.family == "joukowski":
                out[inside] = zi + self.t * np.conj(zi)
            else:
                az = np.abs(zi)
                phase = np.divide(az, zi, out=np.zeros_like(zi), where=az > 0)
                out[inside] = zi * (1 + self.t * phase**self.m) ** (2 / self.m)
        return out

    def exterior(self, z):
        """The conformal map on ``|z| > 1`` in closed form (principal branch)."""
        z = np.asarray(z, dtype=complex)
        if self.family == "joukowski":
            return z + self.t / z
        return z * (1 + self.t * z ** (-self.m)) ** (2 / self.m)


def parse_complex(text: str) -> complex:
    """Parse ``"re,im"`` (or a bare real) into a complex number."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise ValueError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_family(text: str, t=0j) -> FamilySpec:
    """``"joukowski"``, ``"power:3"``, ``"power:5"``, ..."""
    text = text.strip().lower()
    if isinstance(t, str):
        t = parse_complex(t)
    if text == "joukowski":
        return FamilySpec("joukowski", t)
    if text.startswith("power:"):
        try:
            m = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad family string {text!r}") from None
        return FamilySpec("power", t, m)
    raise ValueError(f"unknown family {text!r}; use 'joukowski' or 'power:m'")


def family_map(spec: FamilySpec, K: int) -> LaurentMap:
    """Laurent tail ``b_1..b_K`` of the family member."""
    if K < 1:
        raise ValueError("K must be >= 1")
    tail = np.zeros(K, dtype=complex)
    if spec.family == "joukowski":
        tail[0] = spec.t
        return LaurentMap(0j, tail)
    m = spec.m
    jmax = (K + 1) // m
    binom = series_binomial(Fraction(2, m), jmax + 1).coeffs
    for j in range(1, jmax + 1):
        tail[j * m - 2] = binom[j] * spec.t**j
    return LaurentMap(0j, tail)


def oracle_dilatation(spec: FamilySpec, z, rel_step: float = 1e-5):
    """``d_zbar w / d_z w`` of the closed-form extension by central differences."""
    z = np.asarray(z, dtype=complex)
    if spec.t == 0:
        # the extension is the identity: no difference noise
        return np.zeros_like(z)
    h = rel_step * np.maximum(np.abs(z), 1e-300)
    w = spec.extension
    wx = (w(z + h) - w(z - h)) / (2 * h)
    wy = (w(z + 1j * h) - w(z - 1j * h)) / (2 * h)
    dz = 0.5 * (wx - 1j * wy)
    dzbar = 0.5 * (wx + 1j * wy)
    bad = np.abs(dz) < 1e-8
    if np.any(bad):
        raise SingularPointError(f"|d_z w| < 1e-8 at z = {z[bad].ravel()[0]!r}")
    return dzbar / dz


def beltrami_oracle(spec: FamilySpec, r, theta) -> BeltramiSpec:
    """Sampled dilatation of the closed-form extension.

    The polar grid ``r x theta`` must avoid the origin; it is evaluated once
    to surface singular nodes and to fix the declared sup norm.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("oracle grid must avoid r = 0")
    z = r[:, None] * np.exp(1j * np.asarray(theta, dtype=float))[None, :]
    values = oracle_dilatation(spec, z)
    # the declared bound must also dominate the spec's own validation grid
    check = oracle_dilatation(spec, _validation_grid())
    bound = min(max(float(np.max(np.abs(values))), float(np.max(np.abs(check)))), 1.0)
    return BeltramiSpec.sampled(
        lambda zz: oracle_dilatation(spec, zz), sup_norm=bound, samples=values
    )


def _fit_single_term(spec: FamilySpec):
    # nodes stay off r = 1, where the difference stencil would straddle the circle
    r = (np.arange(16) + 0.5) / 16
    theta = 2 * np.pi * np.arange(64) / 64
    z = r[:, None] * np.exp(1j * theta)[None, :]
    values = oracle_dilatation(spec, z)
    modes = np.fft.fft(values, axis=1) / theta.size  # mode index -> e^{+i k theta}
    k_idx = int(np.argmax(np.mean(np.abs(modes), axis=0)))
    k = k_idx if k_idx <= theta.size // 2 else k_idx - theta.size
    radial = modes[:, k_idx]
    mags = np.abs(radial)
    if np.all(mags > 0):
        a = float(np.polyfit(np.log(r), np.log(mags), 1)[0])
        if abs(a - round(a)) < 1e-6:
            a = float(round(a))
        a = max(a, 0.0)
    else:
        a = 0.0
    c = complex(np.mean(radial / r**a))
    fitted = c * r[:, None] ** a * np.exp(1j * k * theta)[None, :]
    residual = float(np.max(np.abs(values - fitted)))
    return PolarTerm(c, a, k), residual


def family_beltrami(spec: FamilySpec) -> BeltramiSpec:
    """Beltrami coefficient of the family's extension as a :class:`BeltramiSpec`.

    For ``power:m`` with ``m > 3`` the single-term fit from the oracle is
    returned with its residual in ``spec.fit_residual``; if the residual
    exceeds 1e-8 the sampled oracle itself is returned.
    """
    t = spec.t
    if t == 0:
        return BeltramiSpec.polar([], sup_norm=0.0)
    if spec.family == "joukowski":
        return BeltramiSpec.polar([PolarTerm(t, 0.0, 0)], sup_norm=abs(t))
    if spec.m == 3:
        return BeltramiSpec.polar([PolarTerm(t, 0.0, -1)], sup_norm=abs(t))
    term, residual = _fit_single_term(spec)
    if residual > FIT_TOLERANCE:
        r = (np.arange(16) + 0.5) / 16
        theta = 2 * np.pi * np.arange(64) / 64
        out = beltrami_oracle(spec, r, theta)
    else:
        out = BeltramiSpec.polar([term], sup_norm=min(abs(term.c), 1.0))
    out.fit_residual = residual
    return out


def schwarzian(f: LaurentMap, z):
    """Schwarzian derivative ``(f''/f')' - (f''/f')**2 / 2`` for ``|z| > 1``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) <= 1):
        raise ValueError("the Schwarzian is evaluated on |z| > 1 only")
    d1 = f.derivative(z, 1)
    if np.any(np.abs(d1) < 1e-12):
        raise SingularPointError("f'(z) vanishes: the Schwarzian has a pole")
    d2 = f.derivative(z, 2)
    d3 = f.derivative(z, 3)
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


@dataclass(frozen=True)
class BNormEstimate:
    """Grid lower bound for ``sup (|z|**2 - 1)**2 |S_f(z)|``."""

    value: float
    argmax: complex
    radial_samples: int
    angular_samples: int
    r_max: float = 10.0


def _weight(f, z):
    return (abs(z) ** 2 - 1) ** 2 * abs(schwarzian(f, z))


def bnorm(f: LaurentMap, radial_samples: int = 64, angular_samples: int = 128) -> BNormEstimate:
    """Lower bound for the B-norm of the Schwarzian on ``1 < |z| <= 10``.

    Grid search on ``r - 1`` log-spaced in ``[1e-3, 9]`` times a uniform
    angle grid, then bounded scalar refinement in ``r`` along the best ray,
    in ``theta`` at that radius, and in ``r`` once more.
    """
    if radial_samples < 16 or angular_samples < 16:
        raise ValueError("need at least 16 samples in each direction")
    r = 1 + np.logspace(-3, np.log10(9), radial_samples)
    theta = 2 * np.pi * np.arange(angular_samples) / angular_samples
    z = r[:, None] * np.exp(1j * theta)[None, :]
    W = (r[:, None] ** 2 - 1) ** 2 * np.abs(schwarzian(f, z))
    i, j = np.unravel_index(np.argmax(W), W.shape)
    best_val, best_r, best_th = float(W[i, j]), r[i], theta[j]
    if best_val == 0:
        return BNormEstimate(0.0, complex(z[i, j]), radial_samples, angular_samples)
    r_lo, r_hi = r[max(i - 1, 0)], r[min(i + 1, r.size - 1)]
    dth = 2 * np.pi / angular_samples
    for axis in ("r", "theta", "r"):
        if axis == "r":
            res = minimize_scalar(
                lambda s: -_weight(f, s * np.exp(1j * best_th)),
                bounds=(r_lo, r_hi), method="bounded", options={"xatol": 1e-10},
            )
            cand = (-res.fun, res.x, best_th)
        else:
            res = minimize_scalar(
                lambda a: -_weight(f, best_r * np.exp(1j * a)),
                bounds=(best_th - dth, best_th + dth), method="bounded",
                options={"xatol": 1e-10},
            )
            cand = (-res.fun, best_r, res.x)
        if cand[0] > best_val:
            best_val, best_r, best_th = cand
    return BNormEstimate(
        float(best_val), complex(best_r * np.exp(1j * best_th)), radial_samples, angular_samples
    )

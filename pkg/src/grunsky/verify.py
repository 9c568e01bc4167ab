"""Checks along Teichmueller disks ``t -> f^{t mu*}`` of the map catalog.

For a unit vector ``x`` the function ``h_x(t) = x^T G(f^{t mu*}) x`` is
holomorphic in ``t``, maps the disk into itself and vanishes at ``t = 0``.
Its derivative there is ``x^T B x`` with ``B`` the abelian matrix of
``mu*``.  Golusin's refinement of the Schwarz lemma then gives

    alpha r  <=  kappa(r)  <=  r (r + alpha) / (1 + alpha r),

and the envelope ``lambda_kappa = sup_x |h_x'| / (1 - |h_x|**2)`` of the
pulled-back hyperbolic metrics can be compared with ``atanh(kappa)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson

from .abelian import alpha_norm
from .core import DEFAULT_LADDER, LaurentMap, grunsky_coefficients, grunsky_matrix, grunsky_norm
from .families import FamilySpec, family_beltrami, family_map
from .takagi import bilinear, symmetric_bilinear_norm

__all__ = [
    "DEFAULT_R_GRID",
    "GolusinEstimationError",
    "CriterionViolation",
    "family_grunsky_matrix",
    "family_kappa",
    "family_alpha",
    "h_eval",
    "GolusinResult",
    "golusin_check",
    "golusin_bound_check",
    "VerificationRow",
    "VerificationReport",
    "verify_theorem1",
    "origin_slope",
    "MetricSample",
    "metric_lambda_kappa",
    "Lemma4Report",
    "lemma4_check",
    "FredholmEstimate",
    "fredholm_eigenvalue",
    "DiscriminationReport",
    "theorem1_discrimination",
    "golusin_upper",
]

DEFAULT_R_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
SANDWICH_TOL = 1e-9
GOLUSIN_TOL = 1e-8
ORDER_PROBES = (1e-3, 2e-3, 4e-3)
PROBE_SCALES = (1.0, 1e-1, 1e-2, 1e-3)


class GolusinEstimationError(ValueError):
    """The vanishing order of ``h_x`` at 0 could not be read off as an integer."""


class CriterionViolation(ArithmeticError):
    """``|h_x(t)| >= 1``: impossible for a univalent map."""


@lru_cache(maxsize=1024)
def _matrix_cached(spec: FamilySpec, N: int) -> np.ndarray:
    G = grunsky_matrix(grunsky_coefficients(family_map(spec, 2 * N - 1), N)).entries
    G.setflags(write=False)
    return G


def family_grunsky_matrix(spec: FamilySpec, N: int) -> np.ndarray:
    """Weighted Grunsky matrix ``sqrt(mn) alpha_mn`` of a catalog member (cached)."""
    return _matrix_cached(spec, int(N))


def family_kappa(spec: FamilySpec, N: int, seed: int = 0) -> float:
    return symmetric_bilinear_norm(family_grunsky_matrix(spec, N), seed=seed).sigma


def family_alpha(spec: FamilySpec, N: int, seed: int = 0) -> float:
    """``alpha(mu*)`` for the unit-normalized dilatation of the family.

    The catalog dilatations are linear in ``t``, so ``mu*`` depends only on
    the phase of ``t``; a real positive ``t`` is used when ``t = 0``.
    """
    member = spec if spec.t != 0 else spec.at(0.5)
    return alpha_norm(family_beltrami(member).normalized(), N, seed=seed).sigma


def golusin_upper(r, alpha, order: int = 1):
    """``|t|**m (|t| + a) / (1 + a |t|)``."""
    r = np.abs(r)
    return r**order * (r + alpha) / (1 + alpha * r)


def h_eval(spec: FamilySpec, x, N: int) -> complex:
    """``x^T G x`` for the ``N x N`` Grunsky matrix of the family member."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (N,):
        raise ValueError(f"x must have length N = {N}")
    if abs(np.linalg.norm(x) - 1) > 1e-10:
        raise ValueError(f"x must be a unit vector (|x| = {np.linalg.norm(x)!r})")
    return complex(bilinear(family_grunsky_matrix(spec, N), x))


@dataclass(frozen=True)
class GolusinResult:
    ok: bool
    max_violation: float
    order: int
    leading_coeff: complex
    degenerate: bool = False


def golusin_check(g, t_grid, tol: float = GOLUSIN_TOL) -> GolusinResult:
    """Check ``|g(t)| <= |t|**m (|t| + |c_m|)/(1 + |c_m| |t|)`` on ``t_grid``.

    ``m`` is read from the log-log slope of ``|g|`` between ``t = 1e-3`` and
    ``2e-3``; ``c_m`` is a two-level Richardson extrapolation of
    ``g(t)/t**m`` from ``t = 1e-3, 2e-3, 4e-3``.  When the slope is more
    than 0.05 from an integer (a small leading coefficient), the probes are
    moved towards 0 by factors of 10, down to ``t = 1e-6``.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    values = np.array([complex(g(t)) for t in t_grid])
    for scale in PROBE_SCALES:
        h1, h2, h4 = (scale * h for h in ORDER_PROBES)
        g1, g2, g4 = (complex(g(h)) for h in (h1, h2, h4))
        if max(abs(g1), abs(g2)) < 1e-15 * scale:
            ok = bool(np.all(np.abs(values) < 1e-12))
            worst = float(np.max(np.abs(values), initial=0.0))
            return GolusinResult(ok, worst, 0, 0j, degenerate=True)
        slope = math.log(abs(g2) / abs(g1)) / math.log(2)
        order = round(slope)
        if abs(slope - order) <= 0.05 and order >= 1:
            break
    else:
        raise GolusinEstimationError(f"vanishing order slope {slope:.4f} is not an integer")
    q1, q2, q4 = g1 / h1**order, g2 / h2**order, g4 / h4**order
    c = (8 * q1 - 6 * q2 + q4) / 3
    bound = golusin_upper(t_grid, abs(c), order)
    violation = np.abs(values) - bound
    worst = float(np.max(violation, initial=-np.inf))
    return GolusinResult(bool(worst <= tol), worst, order, complex(c))


def golusin_bound_check(spec: FamilySpec, x, t_grid, N: int) -> GolusinResult:
    """Golusin bound for ``h_x`` along the family's disk ``t -> spec.at(t)``."""
    x = np.asarray(x, dtype=complex)
    return golusin_check(lambda t: h_eval(spec.at(t), x, N), t_grid)


@dataclass(frozen=True)
class VerificationRow:
    r: float
    kappa: float
    alpha: float
    lower: float
    upper: float
    residual_theorem1: float
    residual_upper: float
    sandwich_ok: bool

    @property
    def position(self) -> float:
        """Where ``kappa`` sits in ``[lower, upper]``: 0 at the lower end, 1 at the upper."""
        width = self.upper - self.lower
        return float("nan") if width <= 0 else (self.kappa - self.lower) / width


@dataclass
class VerificationReport:
    family: str
    N: int
    alpha: float
    rows: list[VerificationRow]

    @property
    def all_ok(self) -> bool:
        return all(row.sandwich_ok for row in self.rows)


def verify_theorem1(spec: FamilySpec, t_magnitudes=DEFAULT_R_GRID, N: int = 16,
                    seed: int = 0) -> VerificationReport:
    """Compare ``kappa_N`` with the ``alpha r`` / Golusin envelope at each ``r``.

    ``residual_theorem1 = kappa - alpha r`` is reported, not asserted.
    """
    mags = [float(r) for r in t_magnitudes]
    if any(not 0 < r <= 0.95 for r in mags):
        raise ValueError("disk parameters must lie in (0, 0.95]")
    alpha = family_alpha(spec, N, seed=seed)
    rows = []
    for r in mags:
        kappa = family_kappa(spec.at(r), N, seed=seed)
        lower = alpha * r
        upper = float(golusin_upper(r, alpha))
        ok = lower - SANDWICH_TOL <= kappa <= upper + SANDWICH_TOL
        rows.append(VerificationRow(r, kappa, alpha, lower, upper, kappa - lower,
                                    upper - kappa, ok))
    return VerificationReport(spec.name, N, alpha, rows)


def origin_slope(spec: FamilySpec, N: int, radii=(1e-3, 5e-4)) -> float:
    """Richardson estimate of ``lim_{r->0} kappa_N(r)/r``."""
    r1, r2 = radii
    q1 = family_kappa(spec.at(r1), N) / r1
    q2 = family_kappa(spec.at(r2), N) / r2
    ratio = r1 / r2
    return (ratio * q2 - q1) / (ratio - 1)


@dataclass(frozen=True)
class MetricSample:
    r: float
    lambda_est: float
    achieving_x: np.ndarray
    optimizer_budget: int


def _metric_value(G, D, x):
    b = bilinear(G, x)
    if abs(b) >= 1:
        raise CriterionViolation(f"|h_x| = {abs(b)!r} >= 1")
    return abs(bilinear(D, x)) / (1 - abs(b) ** 2)


def _refine(G, D, x, steps):
    lam = _metric_value(G, D, x)
    for _ in range(steps):
        a, b = bilinear(D, x), bilinear(G, x)
        den = 1 - abs(b) ** 2
        if abs(a) == 0:
            break
        # Wirtinger gradient d(lambda)/d(conj x)
        grad = (a * np.conj(D @ x) / abs(a)) / den + abs(a) * 2 * b * np.conj(G @ x) / den**2
        grad = grad - np.real(np.vdot(x, grad)) * x
        gn = np.linalg.norm(grad)
        if gn < 1e-14:
            break
        step = 0.5 / gn
        for _ in range(30):
            trial = x + step * grad
            trial = trial / np.linalg.norm(trial)
            val = _metric_value(G, D, trial)
            if val > lam:
                x, lam = trial, val
                break
            step *= 0.5
        else:
            break
    return x, lam


def metric_lambda_kappa(spec: FamilySpec, r: float, N: int, budget: int = 256,
                        seed: int = 0, refine_steps: int = 32) -> MetricSample:
    """Lower estimate of ``lambda_kappa(r) = sup_x |h_x'(r)| / (1 - |h_x(r)|**2)``.

    ``h_x'`` is a central difference in the disk parameter with step
    ``1e-4 (1 - r)``.  Candidates: top Takagi vectors of ``G`` at ``r`` and
    ``r +- step`` and of the difference quotient ``dG/dt``, ``budget`` random
    unit vectors, then 32 projected gradient-ascent steps from the best one.
    ``r = 0`` is admitted so the metric can be integrated from the origin.
    """
    if not 0 <= r < 0.95:
        raise ValueError("r must lie in [0, 0.95)")
    step = 1e-4 * (1 - r)
    G = family_grunsky_matrix(spec.at(r), N)
    Gp = family_grunsky_matrix(spec.at(r + step), N)
    Gm = family_grunsky_matrix(spec.at(r - step), N)
    D = (Gp - Gm) / (2 * step)
    D = 0.5 * (D + D.T)
    cands = [symmetric_bilinear_norm(M, seed=seed).argmax_x for M in (G, Gp, Gm, D)]
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((budget, N)) + 1j * rng.standard_normal((budget, N))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    X = np.vstack([np.array(cands), X])
    a = np.einsum("ij,jk,ik->i", X, D, X)
    b = np.einsum("ij,jk,ik->i", X, G, X)
    if np.any(np.abs(b) >= 1):
        raise CriterionViolation("a candidate has |h_x| >= 1")
    lam = np.abs(a) / (1 - np.abs(b) ** 2)
    best = int(np.argmax(lam))
    x, value = _refine(G, D, X[best], refine_steps)
    return MetricSample(float(r), float(value), x, budget)


@dataclass
class Lemma4Report:
    r_max: float
    lhs: float
    rhs: float
    residual: float
    samples: list[MetricSample] = field(repr=False, default_factory=list)


def lemma4_check(spec: FamilySpec, r_max: float = 0.5, grid_size: int = 32, N: int = 16,
                 budget: int = 256, seed: int = 0) -> Lemma4Report:
    """``atanh(kappa_N(r_max))`` against Simpson's rule on ``lambda_kappa``.

    ``grid_size`` is the number of subintervals of ``[0, r_max]``.
    """
    if not 0 <= r_max <= 0.8:
        raise ValueError("r_max must lie in [0, 0.8]")
    if grid_size < 16:
        raise ValueError("grid_size must be >= 16")
    if r_max == 0:
        return Lemma4Report(0.0, 0.0, 0.0, 0.0)
    grid = np.linspace(0, r_max, grid_size + 1)
    samples = [metric_lambda_kappa(spec, float(t), N, budget, seed) for t in grid]
    rhs = float(simpson([s.lambda_est for s in samples], x=grid))
    lhs = math.atanh(family_kappa(spec.at(r_max), N, seed=seed))
    return Lemma4Report(r_max, lhs, rhs, abs(lhs - rhs), samples)


@dataclass(frozen=True)
class FredholmEstimate:
    """``rho = 1/kappa_N``; an upper bound for the first Fredholm eigenvalue.

    ``rho_abelian = 1/alpha`` is the independent estimate from the catalog
    dilatation (``None`` for raw maps).  ``rho = inf`` marks the circle.
    """

    rho: float
    kappa: float
    N: int
    rho_abelian: float | None = None
    is_upper_bound: bool = True

    @property
    def is_circle(self) -> bool:
        return math.isinf(self.rho)


def fredholm_eigenvalue(source, N: int = 16, seed: int = 0) -> FredholmEstimate:
    """First Fredholm eigenvalue of the image of the unit circle.

    ``source`` is a :class:`FamilySpec` or a :class:`LaurentMap`.
    """
    rho_ab = None
    if isinstance(source, FamilySpec):
        kappa = family_kappa(source, N, seed=seed)
        if source.t != 0:
            a = alpha_norm(family_beltrami(source), N, seed=seed).sigma
            rho_ab = math.inf if a == 0 else 1 / a
    elif isinstance(source, LaurentMap):
        kappa = grunsky_norm(source, [N], seed=seed).kappa
    else:
        raise TypeError(f"expected FamilySpec or LaurentMap, got {type(source).__name__}")
    rho = math.inf if kappa <= 1e-12 else 1 / kappa
    return FredholmEstimate(rho, kappa, N, rho_ab)


@dataclass
class DiscriminationReport:
    """Measured ``kappa_N(r)`` against the two ends of the envelope."""

    family: str
    r: float
    alpha: float
    ladder: list[tuple[int, float]]
    linear_candidate: float
    golusin_candidate: float
    monotone: bool

    @property
    def kappa(self) -> float:
        return self.ladder[-1][1]

    @property
    def position(self) -> float:
        return (self.kappa - self.linear_candidate) / (
            self.golusin_candidate - self.linear_candidate
        )

    @property
    def increments(self) -> list[float]:
        k = [v for _, v in self.ladder]
        return [b - a for a, b in zip(k, k[1:])]

    def summary(self) -> str:
        lines = [f"{self.family} at r = {self.r}: alpha(mu*) = {self.alpha:.12f}"]
        for N, k in self.ladder:
            lines.append(f"  kappa_{N:<3d} = {k:.12f}")
        lines.append(f"  alpha*r             = {self.linear_candidate:.12f}")
        lines.append(f"  r(r+a)/(1+a r)      = {self.golusin_candidate:.12f}")
        lines.append(f"  kappa - alpha*r     = {self.kappa - self.linear_candidate:+.3e}")
        lines.append(f"  upper - kappa       = {self.golusin_candidate - self.kappa:+.3e}")
        lines.append(f"  relative position   = {self.position:.4f} (0 = alpha*r, 1 = upper)")
        lines.append(f"  last increment      = {self.increments[-1]:.3e}; monotone = {self.monotone}")
        return "\n".join(lines)


def theorem1_discrimination(spec: FamilySpec, r: float = 0.6, ladder=DEFAULT_LADDER,
                            seed: int = 0) -> DiscriminationReport:
    member = spec.at(r)
    ladder = sorted(ladder)
    report = grunsky_norm(family_map(member, 2 * ladder[-1] - 1), ladder, seed=seed)
    alpha = family_alpha(spec, ladder[-1], seed=seed)
    ks = [k for _, k in report.rows]
    monotone = all(b >= a - 1e-12 for a, b in zip(ks, ks[1:]))
    return DiscriminationReport(spec.name, r, alpha, report.rows, alpha * r,
                                float(golusin_upper(r, alpha)), monotone)

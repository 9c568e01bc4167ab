"""Grunsky coefficients, the weighted Grunsky matrix and the Grunsky norm.

A map ``f(z) = z + b0 + b1/z + b2/z**2 + ...`` on ``|z| > 1`` is stored by its
Laurent tail.  In ``u = 1/z``, ``v = 1/zeta`` the difference quotient is

    (f(z) - f(zeta)) / (z - zeta) = 1 - sum_k b_k sum_{j<k} u**(k-j) v**(j+1)

so ``b0`` cancels and the Grunsky coefficients are minus the coefficients of
its bivariate logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .series import BivariateSeries, UnivariateSeries, bivar_log
from .takagi import SymmetricNormResult, symmetric_bilinear_norm

__all__ = [
    "DEFAULT_LADDER",
    "TruncationError",
    "InvariantError",
    "LaurentMap",
    "TaylorMap",
    "GrunskyTable",
    "GrunskyMatrix",
    "ConvergenceReport",
    "grunsky_coefficients",
    "grunsky_matrix",
    "grunsky_norm",
    "qc_bound_check",
    "inversion_map",
    "taylor_grunsky_coefficients",
]

DEFAULT_LADDER = (2, 4, 8, 16, 32, 48)
UNIVALENCE_SLACK = 1e-12


class TruncationError(ValueError):
    """The Laurent tail is too short for the requested matrix size."""


class InvariantError(AssertionError):
    """A hard mathematical invariant failed numerically."""


@dataclass(frozen=True)
class LaurentMap:
    """``f(z) = z + b0 + sum_{k=1}^{K} tail[k-1] * z**-k``."""

    b0: complex = 0j
    tail: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))

    def __post_init__(self):
        tail = np.array(self.tail, dtype=complex).ravel()
        if not (np.all(np.isfinite(tail)) and np.isfinite(self.b0)):
            raise ValueError("Laurent coefficients must be finite")
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "b0", complex(self.b0))

    @classmethod
    def identity(cls, K: int = 0) -> LaurentMap:
        return cls(0j, np.zeros(K, dtype=complex))

    @property
    def K(self) -> int:
        return self.tail.size

    def padded(self, K: int) -> LaurentMap:
        """The same finite Laurent sum with the tail zero-extended to length ``K``."""
        if K <= self.K:
            return self
        return LaurentMap(self.b0, np.concatenate([self.tail, np.zeros(K - self.K, complex)]))

    def translated(self, c) -> LaurentMap:
        return LaurentMap(self.b0 + c, self.tail)

    def derivative(self, z, order: int = 0):
        """``f^(order)(z)`` from the term-wise derivatives of the tail."""
        z = np.asarray(z, dtype=complex)
        k = np.arange(1, self.K + 1)
        # d^n/dz^n z**-k = (-1)**n k (k+1) ... (k+n-1) z**-(k+n)
        fall = np.ones(self.K)
        for i in range(order):
            fall = fall * (k + i)
        coef = (-1) ** order * fall * self.tail
        zz = z[..., None] ** -(k + order)
        out = zz @ coef if self.K else np.zeros_like(z)
        if order == 0:
            out = out + z + self.b0
        elif order == 1:
            out = out + 1.0
        return out

    def __call__(self, z):
        return self.derivative(z, 0)


@dataclass(frozen=True)
class TaylorMap:
    """``F(z) = sum_{j>=1} coeffs[j-1] z**j`` with ``coeffs[0] == 1``."""

    coeffs: np.ndarray

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polynomial.polynomial.polyval(z, np.concatenate([[0], self.coeffs]))


@dataclass(frozen=True)
class GrunskyTable:
    alpha: np.ndarray

    @property
    def N(self) -> int:
        return self.alpha.shape[0]

    def __getitem__(self, mn):
        m, n = mn
        return self.alpha[m - 1, n - 1]


@dataclass(frozen=True)
class GrunskyMatrix:
    entries: np.ndarray

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def block(self, N: int) -> GrunskyMatrix:
        return GrunskyMatrix(self.entries[:N, :N])


@dataclass
class ConvergenceReport:
    """Truncated Grunsky norms along a ladder of matrix sizes."""

    rows: list[tuple[int, float]]
    univalence_violated: bool
    k_bound: float | None = None
    results: dict[int, SymmetricNormResult] = field(default_factory=dict, repr=False)

    @property
    def kappa(self) -> float:
        """Norm at the largest truncation."""
        return self.rows[-1][1]

    @property
    def max_kappa(self) -> float:
        return max(k for _, k in self.rows)


def _difference_quotient(f: LaurentMap, N: int) -> BivariateSeries:
    F = BivariateSeries.one(N)
    c = F.coeffs
    for k in range(1, min(f.K, 2 * N - 1) + 1):
        bk = f.tail[k - 1]
        if bk == 0:
            continue
        # u**(k-j) v**(j+1) for j = 0..k-1, clipped to the box
        j = np.arange(max(0, k - N), min(k - 1, N - 1) + 1)
        c[k - j, j + 1] -= bk
    return F


def grunsky_coefficients(f: LaurentMap, N: int) -> GrunskyTable:
    """Grunsky coefficients ``alpha[m, n]`` for ``1 <= m, n <= N``.

    Requires ``f.K >= 2N - 1``: the box ``m, n <= N`` receives contributions
    from ``b_k`` up to ``k = 2N - 1``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if f.K < 2 * N - 1:
        raise TruncationError(
            f"N = {N} needs a Laurent tail of length K >= {2 * N - 1}, got K = {f.K}"
        )
    log_f = bivar_log(_difference_quotient(f, N))
    a = -log_f.coeffs[1:, 1:]
    return GrunskyTable(0.5 * (a + a.T))


def grunsky_matrix(table: GrunskyTable) -> GrunskyMatrix:
    idx = np.sqrt(np.arange(1, table.N + 1))
    return GrunskyMatrix(idx[:, None] * idx[None, :] * table.alpha)


def grunsky_norm(
    f: LaurentMap,
    N_list=DEFAULT_LADDER,
    *,
    k_bound: float | None = None,
    seed: int = 0,
) -> ConvergenceReport:
    """Truncated Grunsky norms ``kappa_N`` for each ``N`` in ``N_list``.

    The coefficients are computed once at the largest ``N``; every smaller
    ``kappa_N`` is the norm of a leading block of the same matrix, so the
    ladder is nondecreasing up to round-off.  A decrease larger than 1e-12
    raises :class:`InvariantError`.
    """
    ladder = sorted(set(int(n) for n in N_list))
    if not ladder:
        raise ValueError("empty N ladder")
    G = grunsky_matrix(grunsky_coefficients(f, ladder[-1]))
    rows, results = [], {}
    for N in ladder:
        res = symmetric_bilinear_norm(G.entries[:N, :N], seed=seed)
        rows.append((N, res.sigma))
        results[N] = res
    for (n0, k0), (n1, k1) in zip(rows, rows[1:]):
        if k1 < k0 - 1e-12:
            raise InvariantError(f"kappa decreased from N={n0} ({k0!r}) to N={n1} ({k1!r})")
    violated = any(k > 1 + UNIVALENCE_SLACK for _, k in rows)
    return ConvergenceReport(rows, violated, k_bound, results)


def qc_bound_check(report: ConvergenceReport, k: float) -> bool:
    """Necessary condition for a ``k``-quasiconformal extension: ``kappa <= k``."""
    if not 0 <= k < 1:
        raise ValueError(f"k must lie in [0, 1), got {k}")
    return report.max_kappa <= k + 1e-9


def inversion_map(f: LaurentMap, K: int) -> TaylorMap:
    """Taylor coefficients of ``F(z) = 1/f(1/z) = z + a2 z**2 + ...`` to order ``K``.

    ``f(1/z) = (1 + b0 z + b1 z**2 + ...)/z`` so ``F`` is ``z`` times the
    reciprocal of that bracket.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    c = np.zeros(K, dtype=complex)
    c[0] = 1.0
    if K > 1:
        c[1] = f.b0
    m = min(f.K, K - 2)
    if m > 0:
        c[2 : 2 + m] = f.tail[:m]
    recip = UnivariateSeries(c).reciprocal()
    return TaylorMap(recip.coeffs)


def taylor_grunsky_coefficients(F: TaylorMap, N: int) -> GrunskyTable:
    """Grunsky coefficients of a disk map ``F(z) = z + a2 z**2 + ...``.

    Uses ``log[z w (F(z)-F(w)) / (F(z) F(w) (z-w))] = -sum alpha_mn z^m w^n``,
    written as ``log Q(z, w) - log P(z) - log P(w)`` with ``F = z P(z)``.
    """
    need = 2 * N + 1
    if F.coeffs.size < need:
        raise TruncationError(f"N = {N} needs {need} Taylor coefficients, got {F.coeffs.size}")
    a = F.coeffs[:need]
    Q = BivariateSeries.zero(N)
    P = BivariateSeries.zero(N)
    for k in range(1, need + 1):
        # (z**k - w**k)/(z - w) = sum_j z**j w**(k-1-j)
        for j in range(max(0, k - 1 - N), min(k - 1, N) + 1):
            Q.coeffs[j, k - 1 - j] += a[k - 1]
    P.coeffs[:, 0] = a[: N + 1]
    logP = bivar_log(P).coeffs
    total = bivar_log(Q).coeffs - logP - logP.T
    alpha = -total[1:, 1:]
    return GrunskyTable(0.5 * (alpha + alpha.T))

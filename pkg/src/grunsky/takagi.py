"""Norm of the bilinear form ``x -> x^T M x`` for complex symmetric ``M``.

For ``M = M^T`` the Takagi factorization ``M = U diag(s) U^T`` shows that
``sup_{|x|=1} |x^T M x|`` is the largest singular value of ``M``.  The
maximizer is found by the antilinear power iteration ``x <- conj(M x)``,
which in Takagi coordinates is ordinary power iteration on ``diag(s)**2``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SymmetryError",
    "TakagiConvergenceWarning",
    "SymmetricNormResult",
    "symmetric_bilinear_norm",
    "bilinear",
]

SVD_FALLBACK_MAX_DIM = 64
FALLBACK_RESIDUAL = 1e-10


class SymmetryError(ValueError):
    pass


class TakagiConvergenceWarning(RuntimeWarning):
    """The iteration budget ran out; ``best_residual`` is attached."""

    def __init__(self, message, best_residual):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(frozen=True)
class SymmetricNormResult:
    sigma: float
    argmax_x: np.ndarray
    iterations: int
    residual: float

    @property
    def degenerate(self) -> bool:
        return self.sigma == 0.0


def bilinear(M, x):
    """``x^T M x`` (no conjugation)."""
    return x @ (M @ x)


def _polish(M, x):
    """Turn an iterate from the top Takagi subspace into an attaining vector.

    With ``y = conj(M x)/|M x|`` both ``x + y`` and ``i (x - y)`` lie in the
    real span of the Takagi vectors; the better of the two is rotated so
    that ``z^T M z`` is real and nonnegative.
    """
    Mx = M @ x
    nrm = np.linalg.norm(Mx)
    if nrm == 0:
        return x, 0.0, 0.0
    y = np.conj(Mx) / nrm
    best = None
    for z in (x + y, 1j * (x - y), x):
        zn = np.linalg.norm(z)
        if zn < 1e-8:
            continue
        z = z / zn
        val = bilinear(M, z)
        if best is None or abs(val) > abs(best[1]):
            best = (z, val)
    z, val = best
    z = z * np.exp(-0.5j * np.angle(val))
    sigma = abs(val)
    residual = float(np.linalg.norm(M @ z - sigma * np.conj(z)))
    return z, float(sigma), residual


def symmetric_bilinear_norm(
    M,
    *,
    tol: float = 1e-12,
    max_iter: int = 10_000,
    starts: int = 3,
    seed: int = 0,
) -> SymmetricNormResult:
    """Largest singular value of a complex symmetric matrix and its maximizer.

    Parameters
    ----------
    M : array_like, shape (n, n)
        Complex symmetric matrix; ``|M - M^T|`` must not exceed 1e-12.
    tol : float
        Stopping tolerance on the Takagi residual ``|M x - sigma conj(x)|``.
    max_iter : int
        Iteration budget per random start.
    starts : int
        Number of random starting vectors (at least 3 are used).
    seed : int
        Seed for the starting vectors.

    Returns
    -------
    SymmetricNormResult
        ``sigma = |x^T M x|`` for the returned unit vector ``x``, and the
        residual certifying that ``x`` is a Takagi vector.  When the
        iteration leaves a residual above 1e-10 and ``n <= 64`` the result is
        recomputed from a dense SVD.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SymmetryError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    asym = np.max(np.abs(M - M.T)) if n else 0.0
    if asym > 1e-12:
        raise SymmetryError(f"matrix is not symmetric (max |M - M^T| = {asym:.3e})")
    e1 = np.zeros(n, dtype=complex)
    if n:
        e1[0] = 1.0
    if n == 0 or not np.any(M):
        return SymmetricNormResult(0.0, e1, 0, 0.0)

    rng = np.random.default_rng(seed)
    best = None
    total_iters = 0
    for _ in range(max(starts, 3)):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x /= np.linalg.norm(x)
        sigma_prev = -1.0
        cand = None
        for it in range(1, max_iter + 1):
            Mx = M @ x
            sigma = np.linalg.norm(Mx)
            if sigma == 0:
                x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                x /= np.linalg.norm(x)
                continue
            x = np.conj(Mx) / sigma
            if abs(sigma - sigma_prev) <= tol * sigma:
                cand = _polish(M, x)
                if cand[2] <= tol * max(1.0, cand[1]):
                    break
            sigma_prev = sigma
        total_iters += it
        if cand is None:
            cand = _polish(M, x)
        if best is None or cand[1] > best[1] + tol or (
            abs(cand[1] - best[1]) <= tol and cand[2] < best[2]
        ):
            best = cand

    z, sigma, residual = best
    if residual > FALLBACK_RESIDUAL and n <= SVD_FALLBACK_MAX_DIM:
        vh = np.linalg.svd(M)[2]
        z, sigma, residual = _polish(M, np.conj(vh[0]))
    if residual > FALLBACK_RESIDUAL:
        warnings.warn(
            TakagiConvergenceWarning(
                f"Takagi iteration did not converge (residual {residual:.3e})", residual
            ),
            stacklevel=2,
        )
    return SymmetricNormResult(float(sigma), z, total_iters, float(residual))

import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grunsky.takagi import (
    SymmetryError,
    TakagiConvergenceWarning,
    bilinear,
    symmetric_bilinear_norm,
)


def _random_symmetric(seed, n, scale=1.0):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (A + A.T) / 2


def test_antidiagonal_example():
    a = 0.56569
    res = symmetric_bilinear_norm(np.array([[0, a], [a, 0]], dtype=complex))
    assert res.sigma == pytest.approx(a, abs=1e-14)


def test_zero_matrix():
    res = symmetric_bilinear_norm(np.zeros((4, 4)))
    assert res.sigma == 0.0 and res.degenerate
    assert np.linalg.norm(res.argmax_x) == pytest.approx(1.0)


def test_diagonal_powers():
    t = 0.5 * np.exp(0.3j)
    res = symmetric_bilinear_norm(np.diag(t ** np.arange(1, 5)))
    assert res.sigma == pytest.approx(0.5, abs=1e-14)


def test_rejects_nonsymmetric():
    with pytest.raises(SymmetryError):
        symmetric_bilinear_norm(np.array([[0, 1], [0, 0]], dtype=complex))


def test_convergence_warning_carries_residual():
    M = _random_symmetric(3, 80)
    with pytest.warns(TakagiConvergenceWarning) as rec:
        res = symmetric_bilinear_norm(M, max_iter=1)
    assert rec[0].message.best_residual == pytest.approx(res.residual)
    assert res.residual > 1e-10


def test_small_matrix_falls_back_to_svd_quietly():
    M = _random_symmetric(4, 12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        res = symmetric_bilinear_norm(M, max_iter=1)
    assert res.sigma == pytest.approx(np.linalg.svd(M, compute_uv=False)[0], rel=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(1, 24))
def test_matches_svd_oracle(seed, n):
    M = _random_symmetric(seed, n)
    res = symmetric_bilinear_norm(M, seed=seed % 7)
    top = np.linalg.svd(M, compute_uv=False)[0]
    assert res.sigma == pytest.approx(top, rel=1e-10)
    # attainment and unit norm
    assert abs(np.linalg.norm(res.argmax_x) - 1) < 1e-12
    assert abs(bilinear(M, res.argmax_x)) >= res.sigma - max(res.residual, 1e-10)
    assert abs(abs(bilinear(M, res.argmax_x)) - res.sigma) < 1e-10


@given(st.integers(0, 2**32 - 1), st.integers(2, 16))
def test_random_vectors_never_exceed_sigma(seed, n):
    M = _random_symmetric(seed, n)
    res = symmetric_bilinear_norm(M)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((200, n)) + 1j * rng.standard_normal((200, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    vals = np.abs(np.einsum("ki,ij,kj->k", X, M, X))
    assert vals.max() <= res.sigma + 1e-10


def test_repeated_top_singular_value():
    # sigma is well defined even when the maximizer is not unique
    M = np.diag([0.7, -0.7j, 0.2])
    res = symmetric_bilinear_norm(M)
    assert res.sigma == pytest.approx(0.7, abs=1e-12)
    assert res.residual < 1e-10

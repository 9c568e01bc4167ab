import numpy as np
import pytest
from hypothesis import given, strategies as st

from grunsky.abelian import (
    BeltramiSpec,
    PolarTerm,
    ResolutionError,
    abelian_matrix,
    alpha_norm,
    beltrami_moments,
    extremal_omega,
    pairing,
    quadrature_moments,
)

ALPHA3 = 2 * np.sqrt(2) / 3


def unit_rotation():
    return BeltramiSpec.polar([PolarTerm(1.0, 0, -1)])


def constant(t):
    return BeltramiSpec.polar([PolarTerm(t, 0, 0)])


def random_polar(seed):
    """A polar-separable coefficient with a few terms and sup norm <= 0.9."""
    rng = np.random.default_rng(seed)
    n = rng.integers(1, 4)
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    c *= 0.9 / np.sum(np.abs(c))
    a = rng.uniform(0, 3, n)
    k = rng.integers(-8, 4, n)
    return BeltramiSpec.polar([PolarTerm(ci, ai, ki) for ci, ai, ki in zip(c, a, k)])


# -- moments ------------------------------------------------------------------

def test_moment_examples():
    t = 0.4 - 0.2j
    M = beltrami_moments(BeltramiSpec.polar([PolarTerm(t, 0, -1)]), 1).values
    np.testing.assert_allclose(M, [0, 2 * np.pi * t / 3], atol=1e-16)
    M = beltrami_moments(constant(t), 2).values
    np.testing.assert_allclose(M, [np.pi * t, 0, 0], atol=1e-16)
    assert not np.any(beltrami_moments(constant(0), 5).values)


def test_resolution_error():
    with pytest.raises(ResolutionError):
        quadrature_moments(unit_rotation(), 200)


@given(st.integers(0, 10_000))
def test_quadrature_matches_closed_form(seed):
    spec = random_polar(seed)
    exact = beltrami_moments(spec, 30).values
    sampled = BeltramiSpec.sampled(spec, spec.sup_norm)
    np.testing.assert_allclose(quadrature_moments(sampled, 30).values, exact, atol=1e-12)


@given(st.integers(0, 10_000))
def test_moment_coarse_bound(seed):
    spec = random_polar(seed)
    assert np.all(np.abs(beltrami_moments(spec, 20).values) <= np.pi * spec.sup_norm + 1e-15)


# -- matrix and norm -------------------------------------------------------------

def test_abelian_matrix_examples():
    B = abelian_matrix(beltrami_moments(unit_rotation(), 2), 2).entries
    np.testing.assert_allclose(B, [[0, ALPHA3], [ALPHA3, 0]], atol=1e-15)
    B = abelian_matrix(beltrami_moments(constant(0.3), 2), 2).entries
    np.testing.assert_allclose(B, [[0.3, 0], [0, 0]], atol=1e-16)
    assert not np.any(abelian_matrix(beltrami_moments(constant(0), 6), 4).entries)


def test_abelian_matrix_needs_moments():
    with pytest.raises(ValueError):
        abelian_matrix(beltrami_moments(constant(0.3), 2), 3)


def test_alpha_norm_examples():
    assert alpha_norm(unit_rotation(), 2).sigma == pytest.approx(ALPHA3, abs=1e-12)
    assert alpha_norm(constant(0.7j), 4).sigma == pytest.approx(0.7, abs=1e-14)
    assert alpha_norm(constant(0), 4).sigma == 0


def test_alpha_norm_saturates_at_n2():
    # mu = e^{-i theta} only sees the (1,2) entry, so larger N change nothing
    for N in (3, 8, 16):
        assert alpha_norm(unit_rotation(), N).sigma == pytest.approx(ALPHA3, abs=1e-12)


@given(st.integers(0, 10_000), st.floats(0.01, 1.0), st.floats(0, 2 * np.pi))
def test_homogeneity(seed, s, phase):
    spec = random_polar(seed)
    base = alpha_norm(spec, 6).sigma
    scaled = alpha_norm(spec.scaled(s * np.exp(1j * phase)), 6).sigma
    assert scaled == pytest.approx(s * base, abs=1e-12)


@given(st.integers(0, 10_000), st.floats(0, 2 * np.pi))
def test_rotation_covariance(seed, phi):
    spec = random_polar(seed)
    assert alpha_norm(spec.rotated(phi), 6).sigma == pytest.approx(
        alpha_norm(spec, 6).sigma, abs=1e-12)


def test_teichmuller_form_equal_norms():
    # psi0 = 1/pi is positive, so k|psi0|/psi0 = k
    for k in (0.2, 0.55, 0.9):
        assert alpha_norm(constant(k), 8).sigma == pytest.approx(k, abs=1e-12)


# -- extremal differentials --------------------------------------------------------

def test_extremal_for_rotation():
    res = alpha_norm(unit_rotation(), 2)
    np.testing.assert_allclose(np.abs(res.argmax_x), [2**-0.5, 2**-0.5], atol=1e-12)
    ext = extremal_omega(res)
    assert ext.omega[0] != 0 and ext.omega[1] != 0
    np.testing.assert_allclose(ext.psi, np.convolve(ext.omega, ext.omega), atol=1e-15)
    # the pairing with the unit-A1 psi attains the bound up to the A1 normalization
    attained = abs(pairing(unit_rotation(), ext.psi))
    assert attained * ext.a1_norm == pytest.approx(ALPHA3, abs=1e-12)


def test_extremal_for_constant():
    ext = extremal_omega(alpha_norm(constant(0.4), 3))
    np.testing.assert_allclose(np.abs(ext.omega), [np.pi**-0.5, 0, 0], atol=1e-12)
    np.testing.assert_allclose(np.abs(ext.psi[0]), 1 / np.pi, atol=1e-12)
    assert ext.a1_norm == pytest.approx(1.0, abs=1e-12)


def test_extremal_degenerate():
    ext = extremal_omega(alpha_norm(constant(0), 3))
    assert ext.degenerate and ext.psi.size == 0


def test_pairing_examples():
    assert pairing(unit_rotation(), []) == 0
    assert pairing(constant(0.3), [1 / np.pi]) == pytest.approx(0.3, abs=1e-14)
    # x-representation of psi = (2/pi) z: x = (1, 1)/sqrt(2)
    x = np.array([1, 1]) / np.sqrt(2)
    omega = x * np.sqrt(np.arange(1, 3) / np.pi)
    psi = np.convolve(omega, omega)
    assert abs(pairing(unit_rotation(), psi)) == pytest.approx(ALPHA3, abs=1e-12)


def test_pairing_equals_bilinear_form(rng):
    spec = random_polar(3)
    N = 5
    B = abelian_matrix(beltrami_moments(spec, 2 * N - 2), N).entries
    x = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    omega = x * np.sqrt(np.arange(1, N + 1) / np.pi)
    assert pairing(spec, np.convolve(omega, omega)) == pytest.approx(x @ B @ x, abs=1e-12)


# -- spec validation -------------------------------------------------------------

def test_spec_rejects_bad_sup_norm():
    with pytest.raises(ValueError):
        BeltramiSpec.polar([PolarTerm(0.5, 0, 0)], sup_norm=0.4)
    with pytest.raises(ValueError):
        BeltramiSpec.polar([PolarTerm(1.2, 0, 0)])


def test_spec_vanishes_outside_disk():
    spec = random_polar(5)
    z = np.array([1.0, 1.5j, -3 + 1j])
    assert not np.any(spec(z))

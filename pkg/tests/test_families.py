import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import binom

from conftest import ring_schwarzian
from grunsky.abelian import alpha_norm
from grunsky.core import LaurentMap
from grunsky.families import (
    FamilySpec,
    SingularPointError,
    beltrami_oracle,
    bnorm,
    family_beltrami,
    family_map,
    oracle_dilatation,
    parse_complex,
    parse_family,
    schwarzian,
)

GRID_R = (np.arange(16) + 0.5) / 16
GRID_THETA = 2 * np.pi * np.arange(64) / 64


# -- parsing ----------------------------------------------------------------------

def test_parse():
    assert parse_complex("0.6,0") == 0.6
    assert parse_complex("0.1,-0.2") == 0.1 - 0.2j
    assert parse_family("power:5", "0.3,0") == FamilySpec("power", 0.3, 5)
    assert parse_family("Joukowski").family == "joukowski"
    for bad in ("power:4", "power:x", "circle"):
        with pytest.raises(ValueError):
            parse_family(bad)
    with pytest.raises(ValueError):
        FamilySpec("power", 1.0, 3)


# -- family_map -------------------------------------------------------------------

def test_family_map_examples():
    tail = family_map(FamilySpec("power", 0.6, 3), 8).tail
    assert tail[1] == pytest.approx(0.4, abs=1e-15)
    assert tail[4] == pytest.approx(-0.04, abs=1e-15)
    assert tail[7] == pytest.approx(binom(2 / 3, 3) * 0.216, abs=1e-15)
    np.testing.assert_array_equal(family_map(FamilySpec("joukowski", 0.5), 3).tail, [0.5, 0, 0])
    for spec in (FamilySpec("joukowski"), FamilySpec("power", 0, 5)):
        assert not np.any(family_map(spec, 12).tail)


@given(st.floats(0, 0.95), st.floats(0, 2 * np.pi), st.sampled_from([3, 5, 7]))
def test_family_map_sparsity(r, phi, m):
    tail = family_map(FamilySpec("power", r * np.exp(1j * phi), m), 40).tail
    k = np.arange(1, 41)
    assert not np.any(tail[(k + 1) % m != 0])


@pytest.mark.parametrize("spec", [FamilySpec("power", 0.6, 3), FamilySpec("power", 0.5j, 5),
                                  FamilySpec("joukowski", -0.4)])
def test_family_map_matches_closed_form(spec):
    f = family_map(spec, 200)
    z = 1.3 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    np.testing.assert_allclose(f(z), spec.exterior(z), atol=1e-13)


def test_extension_is_continuous_across_circle():
    for spec in (FamilySpec("power", 0.6, 3), FamilySpec("power", 0.6, 5),
                 FamilySpec("joukowski", 0.5)):
        th = np.linspace(0, 2 * np.pi, 33)
        inner = spec.extension((1 - 1e-9) * np.exp(1j * th))
        outer = spec.extension((1 + 1e-9) * np.exp(1j * th))
        np.testing.assert_allclose(inner, outer, atol=1e-7)


# -- Beltrami coefficients ------------------------------------------------------------

def test_family_beltrami_examples():
    mu = family_beltrami(FamilySpec("power", 0.6, 3))
    assert mu.terms[0].c == 0.6 and mu.terms[0].a == 0 and mu.terms[0].k == -1
    mu = family_beltrami(FamilySpec("joukowski", 0.5))
    assert mu(np.array([0.3 + 0.1j]))[0] == 0.5
    assert family_beltrami(FamilySpec("power", 0, 3)).sup_norm == 0


def test_oracle_examples():
    z = np.array([0.5 * np.exp(1j * np.pi / 3)])
    val = oracle_dilatation(FamilySpec("power", 0.6, 3), z)[0]
    assert abs(val - 0.6 * np.exp(-1j * np.pi / 3)) < 1e-6
    zz = 0.7 * np.exp(1j * GRID_THETA)
    assert np.max(np.abs(oracle_dilatation(FamilySpec("joukowski", 0.5), zz) - 0.5)) < 1e-6
    assert not np.any(oracle_dilatation(FamilySpec("power", 0, 5), zz))


@pytest.mark.parametrize("spec", [FamilySpec("power", 0.6, 3), FamilySpec("power", 0.3 - 0.4j, 3),
                                  FamilySpec("joukowski", 0.5), FamilySpec("joukowski", -0.7j)])
def test_closed_form_matches_oracle(spec):
    oracle = beltrami_oracle(spec, GRID_R, GRID_THETA)
    closed = family_beltrami(spec)
    z = GRID_R[:, None] * np.exp(1j * GRID_THETA)[None, :]
    assert np.max(np.abs(closed(z) - oracle.samples)) < 1e-6


@pytest.mark.parametrize("spec", [FamilySpec("power", 0.6, 3), FamilySpec("joukowski", -0.35j)])
def test_sup_norm_is_modulus(spec):
    assert family_beltrami(spec).sup_norm == abs(spec.t)


def test_power5_fit():
    # hand derivation: mu_5 = t e^{-3 i theta}, so B has entries 4/5 and 2 sqrt(6)/5
    mu = family_beltrami(FamilySpec("power", 0.6, 5))
    assert mu.is_polar and mu.fit_residual < 1e-8
    term = mu.terms[0]
    assert term.k == -3 and term.a == 0
    assert abs(term.c - 0.6) < 1e-8
    assert alpha_norm(mu.normalized(), 4).sigma == pytest.approx(2 * np.sqrt(6) / 5, abs=1e-8)


def test_oracle_grid_must_avoid_origin():
    with pytest.raises(ValueError):
        beltrami_oracle(FamilySpec("power", 0.5, 3), [0.0, 0.5], GRID_THETA)


def test_singular_node():
    # catalog extensions are never singular inside the disk; an antiholomorphic one is
    class Degenerate(FamilySpec):
        def extension(self, z):
            return np.conj(np.asarray(z, dtype=complex))

    with pytest.raises(SingularPointError):
        oracle_dilatation(Degenerate("joukowski", 0.5), np.array([0.5]))


# -- Schwarzian and B-norm ---------------------------------------------------------------

def test_schwarzian_examples():
    z = np.array([2.0, 1.5j, -3 + 4j])
    assert not np.any(schwarzian(LaurentMap.identity(4), z))
    spec = FamilySpec("joukowski", 0.5)
    val = schwarzian(family_map(spec, 1), np.array([2.0]))[0]
    assert abs(val - ring_schwarzian(spec.exterior, 2.0)) < 1e-10
    spec = FamilySpec("power", 0.6, 3)
    val = schwarzian(family_map(spec, 300), np.array([1.5]))[0]
    assert abs(val - ring_schwarzian(spec.exterior, 1.5)) < 1e-8


def test_schwarzian_random_points(rng):
    spec = FamilySpec("power", 0.6, 3)
    f = family_map(spec, 600)
    radius = rng.uniform(1.1, 5, 20)
    z = radius * np.exp(2j * np.pi * rng.uniform(size=20))
    got = schwarzian(f, z)
    want = np.array([ring_schwarzian(spec.exterior, zz) for zz in z])
    assert np.max(np.abs(got - want)) < 1e-8


def test_schwarzian_domain_errors():
    with pytest.raises(ValueError):
        schwarzian(LaurentMap.identity(1), np.array([0.5]))
    # f(z) = z + 4/z has f'(2) = 0
    with pytest.raises(SingularPointError):
        schwarzian(LaurentMap(0, [4.0]), np.array([2.0]))


def test_bnorm_examples():
    assert bnorm(LaurentMap.identity(3)).value == 0
    values = [bnorm(family_map(FamilySpec("joukowski", t), 1)).value for t in (0.5, 0.25, 0.125)]
    assert values[0] > values[1] > values[2] > 0
    f = family_map(FamilySpec("power", 0.6, 3), 300)
    coarse = bnorm(f, 64, 128).value
    fine = bnorm(f, 128, 256).value
    assert np.isfinite(coarse) and coarse > 0
    assert abs(fine - coarse) < 1e-3

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from elastowave.errors import InvalidMaterialError
from elastowave.material import (
    isotropic_stiffness_apply,
    make_material,
    make_material_poisson,
)


def test_normalized_material():
    mat = make_material(rho=1.0, lam=1.0, mu=1.0)
    assert mat.cT == pytest.approx(1.0, abs=0)
    assert mat.cL == pytest.approx(math.sqrt(3.0), rel=1e-15)
    assert mat.nu == pytest.approx(0.25, rel=1e-15)


def test_zero_lambda():
    mat = make_material(rho=4.0, lam=0.0, mu=1.0)
    assert mat.cT == pytest.approx(0.5, abs=0)
    assert mat.cL == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-15)


def test_zero_shear_rejected():
    with pytest.raises(InvalidMaterialError):
        make_material(rho=1.0, lam=1.0, mu=0.0)
    with pytest.raises(InvalidMaterialError):
        make_material(rho=-1.0, lam=1.0, mu=1.0)
    with pytest.raises(InvalidMaterialError):
        make_material(rho=1.0, lam=-1.0, mu=1.0)  # lam + 2mu/3 < 0


def test_poisson_construction():
    assert make_material_poisson(1.0, 1.0, 0.25).lam == pytest.approx(1.0, rel=1e-15)
    assert make_material_poisson(1.0, 1.0, 0.0).lam == 0.0
    with pytest.raises(InvalidMaterialError):
        make_material_poisson(1.0, 1.0, 0.5)


@given(
    rho=st.floats(0.1, 10.0),
    mu=st.floats(0.1, 10.0),
    nu=st.floats(-0.9, 0.45),
)
def test_poisson_roundtrip_and_speed_order(rho, mu, nu):
    mat = make_material_poisson(rho, mu, nu)
    assert mat.cT < mat.cL
    back = make_material(mat.rho, mat.lam, mat.mu)
    assert back.lam == pytest.approx(mat.lam, rel=1e-14, abs=1e-14)
    assert back.nu == pytest.approx(nu, rel=1e-12, abs=1e-12)
    assert mat.cL == pytest.approx(math.sqrt((2 * mu + mat.lam) / rho), rel=1e-15)
    assert mat.cT == pytest.approx(math.sqrt(mu / rho), rel=1e-15)


def test_stiffness_isotropic_contraction():
    mat = make_material(1.0, 1.0, 1.0)
    sigma = isotropic_stiffness_apply(mat, np.eye(3))
    np.testing.assert_allclose(sigma, 5.0 * np.eye(3), atol=0)


def test_stiffness_antisymmetric_maps_to_zero():
    mat = make_material(1.0, 2.0, 3.0)
    w = np.array([[0.0, 1.0, -2.0], [-1.0, 0.0, 0.5], [2.0, -0.5, 0.0]])
    np.testing.assert_allclose(isotropic_stiffness_apply(mat, w), 0.0, atol=0)


def test_stiffness_pure_shear():
    mat = make_material(1.0, 2.0, 3.0)
    beta = np.outer([1.0, 0, 0], [0, 1.0, 0])
    sigma = isotropic_stiffness_apply(mat, beta)
    expected = np.zeros((3, 3))
    expected[0, 1] = expected[1, 0] = 3.0
    np.testing.assert_allclose(sigma, expected, atol=0)


def test_stiffness_2d_input():
    mat = make_material(1.0, 1.0, 1.0)
    sigma = isotropic_stiffness_apply(mat, np.eye(2))
    np.testing.assert_allclose(sigma, 4.0 * np.eye(2), atol=0)


@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0))
def test_stiffness_symmetries(lam, mu):
    mat = make_material(1.0, lam, mu)
    rng = np.random.default_rng(3)
    beta = rng.normal(size=(3, 3))
    s1 = isotropic_stiffness_apply(mat, beta)
    np.testing.assert_allclose(s1, s1.T, atol=1e-14)
    np.testing.assert_allclose(s1, isotropic_stiffness_apply(mat, beta.T), atol=1e-14)

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kresling import materials as mat
from kresling.errors import DomainError, FitError
from kresling.materials import StressStrainCurve, YeohCoefficients

E615 = mat.TABLE_S1["E615"]


def test_first_invariant():
    assert mat.first_invariant(1, 1, 1) == 3
    assert mat.uniaxial_invariant(2.0) == pytest.approx(5.0, abs=1e-15)
    rng = np.random.default_rng(0)
    l = rng.uniform(0.5, 2.0, 3)
    assert mat.first_invariant(*l) == pytest.approx(sum(x * x for x in l), abs=1e-15)
    with pytest.raises(DomainError):
        mat.first_invariant(1, 0, 1)


def test_energy_density():
    assert mat.yeoh_energy_density(E615, 3.0) == 0.0
    assert mat.yeoh_energy_density(E615, 4.0) == pytest.approx(0.0779, abs=5e-5)
    eco = mat.TABLE_S1["Ecoflex 00-30"]
    x = 0.5
    assert mat.yeoh_energy_density(eco, 3.5) == pytest.approx(
        eco.C10 * x + eco.C20 * x ** 2 + eco.C30 * x ** 3, abs=1e-15)
    with pytest.raises(DomainError, match="I1 >= 3"):
        mat.yeoh_energy_density(E615, 2.9)


def test_coefficients_require_positive_c10():
    with pytest.raises(DomainError, match="C10"):
        YeohCoefficients(0.0)


def test_stress_zero_point():
    for c in mat.TABLE_S1.values():
        assert mat.uniaxial_nominal_stress(c, 1.0) == 0.0
    with pytest.raises(DomainError):
        mat.uniaxial_nominal_stress(E615, 0.0)


@pytest.mark.parametrize("name", sorted(mat.TABLE_S1))
def test_stress_is_energy_gradient(name):
    c = mat.TABLE_S1[name]
    lam = np.linspace(1.01, 2.0, 100)
    h = 1e-6
    w = lambda l: mat.yeoh_energy_density(c, mat.uniaxial_invariant(l))
    fd = (w(lam + h) - w(lam - h)) / (2 * h)
    assert np.allclose(mat.uniaxial_nominal_stress(c, lam), fd, rtol=1e-6, atol=0)


def test_mixture_near_linear():
    lam = np.linspace(1.0, 2.0, 101)
    s = mat.uniaxial_nominal_stress(mat.TABLE_S1["Mixture"], lam)
    fit = np.polyfit(lam, s, 1)
    resid = s - np.polyval(fit, lam)
    r2 = 1 - resid @ resid / ((s - s.mean()) @ (s - s.mean()))
    assert r2 > 0.98


@pytest.mark.parametrize("name", sorted(mat.TABLE_S1))
def test_round_trip(name):
    c = mat.TABLE_S1[name]
    fit = mat.fit_yeoh(mat.synthetic_curve(c))
    assert np.allclose(fit.coefficients.as_array(), c.as_array(), rtol=1e-8, atol=0)
    assert fit.residual_norm < 1e-12


def test_noisy_fit():
    rng = np.random.default_rng(42)
    curve = mat.synthetic_curve(E615)
    noisy = StressStrainCurve(curve.stretch, curve.stress * (1 + 0.01 * rng.standard_normal(curve.stress.size)))
    fit = mat.fit_yeoh(noisy)
    assert fit.coefficients.C10 == pytest.approx(E615.C10, rel=0.05)


@given(st.floats(0.01, 0.1), st.floats(0.0, 0.01), st.floats(-1e-4, 1e-4))
def test_three_term_never_worse(c10, c20, c30):
    rng = np.random.default_rng(1)
    curve = mat.synthetic_curve(YeohCoefficients(c10, c20, c30))
    noisy = StressStrainCurve(curve.stretch, curve.stress + 1e-4 * rng.standard_normal(curve.stress.size))
    try:
        two, three = mat.fit_yeoh(noisy, 2), mat.fit_yeoh(noisy, 3)
    except FitError:
        return
    assert three.residual_norm <= two.residual_norm + 1e-15


def test_fit_errors():
    lam = np.linspace(1.0, 2.0, 10)
    with pytest.raises(FitError, match="constant"):
        mat.fit_yeoh(StressStrainCurve(lam, np.full(10, 0.3)))
    with pytest.raises(FitError, match="1.5"):
        mat.fit_yeoh(StressStrainCurve(np.linspace(1, 1.2, 10), np.linspace(0, 1, 10)))
    with pytest.raises(FitError, match="at least 4"):
        mat.fit_yeoh(StressStrainCurve(np.array([1.0, 1.6, 2.0]), np.array([0.0, 1.0, 2.0])))
    with pytest.raises(FitError, match="increasing"):
        StressStrainCurve(np.array([1.0, 1.5, 1.4]), np.zeros(3))


def test_csv_round_trip(tmp_path):
    curve = mat.synthetic_curve(E615, n=20)
    path = tmp_path / "c.csv"
    curve.write_csv(path)
    back = mat.load_curve(path)
    assert np.array_equal(back.stretch, curve.stretch) and np.array_equal(back.stress, curve.stress)
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,2\n")
    with pytest.raises(FitError, match="header"):
        mat.load_curve(bad)

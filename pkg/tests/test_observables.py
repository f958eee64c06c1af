"""Tests for quadrature dispersions, position densities and widths"""

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.special import eval_hermite, gammaln

from fock_core import HARMONIC, QUADRATIC, fock_basis
from observables import (
    QuadratureConvention,
    density_fwhm,
    hermite_functions,
    ladder_moments,
    photon_statistics,
    position_density,
    quadrature_report,
)
from states import build_coherent_canonical, build_state

LEVELS = 40
Z_SWEEP = np.linspace(0.0, 3.0, 20)
FWHM_Z = [0.5, 1.0, 1.5, 2.0]
X_GRID = np.linspace(-6.0, 6.0, 241)


class TestDispersion:

    @pytest.mark.parametrize("z", Z_SWEEP)
    def test_harmonic_coherent_is_minimal(self, z):
        report = quadrature_report(build_state(z, 0.0, HARMONIC, LEVELS), QuadratureConvention.SQRT2)
        assert report.var_x == pytest.approx(0.5, abs=1e-8)
        assert report.var_p == pytest.approx(0.5, abs=1e-8)

    def test_half_convention(self):
        report = quadrature_report(build_coherent_canonical(1.2, LEVELS), QuadratureConvention.HALF)
        assert report.var_x == pytest.approx(0.25, abs=1e-10)
        assert report.product == pytest.approx(QuadratureConvention.HALF.minimal_product, abs=1e-10)

    def test_quadratic_coherent_shape(self):
        reports = [quadrature_report(build_state(z, 0.0, QUADRATIC, LEVELS)) for z in Z_SWEEP]
        var_x = np.array([r.var_x for r in reports])
        var_p = np.array([r.var_p for r in reports])
        assert np.all(np.diff(var_x) < 0)
        assert np.all(np.diff(var_p) > 0)
        assert np.all(var_x * var_p >= 0.25 - 1e-9)

    def test_vacuum_both_models(self):
        harmonic = quadrature_report(build_state(0.0, 0.0, HARMONIC, LEVELS))
        quadratic = quadrature_report(build_state(0.0, 0.0, QUADRATIC, LEVELS))
        assert harmonic == quadratic

    @pytest.mark.parametrize("gamma", [0.2, 0.5, 0.8])
    def test_harmonic_squeezed_variances(self, gamma):
        report = quadrature_report(build_state(1.0, gamma, HARMONIC, 160), QuadratureConvention.HALF)
        assert report.var_x == pytest.approx(0.25 * (1 - gamma) / (1 + gamma), abs=1e-8)
        assert report.var_p == pytest.approx(0.25 * (1 + gamma) / (1 - gamma), abs=1e-8)
        assert report.product == pytest.approx(1 / 16, abs=1e-8)

    def test_coherent_mean(self):
        z = 0.9 + 0.4j
        moments = ladder_moments(build_coherent_canonical(z, LEVELS))
        assert moments.mean_a == pytest.approx(z, abs=1e-12)
        assert moments.mean_a2 == pytest.approx(z * z, abs=1e-12)
        report = quadrature_report(build_coherent_canonical(z, LEVELS))
        assert report.mean_x == pytest.approx(math.sqrt(2) * z.real, abs=1e-12)
        assert report.mean_p == pytest.approx(math.sqrt(2) * z.imag, abs=1e-12)


def test_photon_statistics_poisson():
    mean, var = photon_statistics(build_coherent_canonical(1.5, LEVELS))
    assert mean == pytest.approx(2.25, rel=1e-10)
    assert var == pytest.approx(2.25, rel=1e-10)


class TestPositionDensity:

    def test_hermite_functions(self):
        x = np.linspace(-4, 4, 17)
        phi = hermite_functions(10, x)
        for n in range(11):
            expected = eval_hermite(n, x) * np.exp(-0.5 * x * x - 0.5 * (n * math.log(2) + gammaln(n + 1.0))) \
                / np.pi ** 0.25
            np.testing.assert_allclose(phi[n], expected, rtol=1e-10, atol=1e-14)

    def test_vacuum_density(self):
        density = position_density(fock_basis(0, LEVELS), X_GRID)
        np.testing.assert_allclose(density, np.exp(-X_GRID ** 2) / math.sqrt(math.pi), atol=1e-15)

    @pytest.mark.parametrize("model", [HARMONIC, QUADRATIC])
    def test_normalized(self, model):
        x = np.linspace(-10, 10, 2001)
        density = position_density(build_state(1.5, 0.0, model, LEVELS), x)
        assert trapezoid(density, x) == pytest.approx(1.0, abs=1e-8)

    def test_coherent_peak_position(self):
        z = 1.5
        density = position_density(build_coherent_canonical(z, LEVELS), X_GRID)
        assert X_GRID[np.argmax(density)] == pytest.approx(math.sqrt(2) * z, abs=0.06)

    def test_harmonic_width_constant(self):
        widths = [density_fwhm(build_state(z, 0.0, HARMONIC, LEVELS), X_GRID) for z in FWHM_Z]
        np.testing.assert_allclose(widths, 2 * math.sqrt(math.log(2)), atol=1e-6)

    def test_quadratic_width_narrows(self):
        widths = [density_fwhm(build_state(z, 0.0, QUADRATIC, LEVELS), X_GRID) for z in FWHM_Z]
        assert np.all(np.diff(widths) < 0)

    def test_grid_too_narrow(self):
        with pytest.raises(ValueError):
            density_fwhm(fock_basis(0, 5), np.linspace(-0.5, 0.5, 11))

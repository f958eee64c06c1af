"""Tests for canonical, nonlinear coherent and nonlinear squeezed state builders"""

import math

import numpy as np
import pytest
from scipy.special import gammaln

from fock_core import HARMONIC, QUADRATIC, make_spectrum
from states import (
    build_coherent_canonical,
    build_nonlinear_coherent,
    build_nonlinear_squeezed,
    build_squeezed_canonical,
    build_state,
    closed_form_linear_quadratic,
    closed_form_quadratic,
    closed_form_table,
    eigen_residual,
    iterate_recurrence,
    solve_recurrence,
)

LEVELS = 40
Z_GRID = [0.5, 1.0, 2.0]
GAMMA_GRID = [0.1, 0.5, 0.9]
LQ_PAIRS = [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0)]


def relative_error(got, expected):
    return float(np.max(np.abs(got - expected)) / np.max(np.abs(expected)))


class TestCoherent:

    def test_poisson_statistics(self):
        state = build_coherent_canonical(1.0, LEVELS)
        n = np.arange(LEVELS + 1)
        poisson = np.exp(-1.0 - gammaln(n + 1.0))
        np.testing.assert_allclose(state.probabilities, poisson, atol=1e-14)

    def test_imaginary_eigenvalue_poisson(self):
        state = build_coherent_canonical(2j, LEVELS)
        n = np.arange(LEVELS + 1)
        np.testing.assert_allclose(state.probabilities, np.exp(-4.0 + n * math.log(4.0) - gammaln(n + 1.0)),
                                   atol=1e-14)

    def test_vacuum_at_zero(self, all_models):
        for model in all_models:
            state = build_nonlinear_coherent(0.0, model, LEVELS)
            assert state.coeffs[0] == 1.0
            assert state.mean_number == 0.0

    def test_harmonic_is_canonical(self):
        z = 1.3 - 0.4j
        np.testing.assert_allclose(build_nonlinear_coherent(z, HARMONIC, LEVELS).coeffs,
                                   build_coherent_canonical(z, LEVELS).coeffs, atol=1e-14)

    @pytest.mark.parametrize("model", [QUADRATIC, make_spectrum("linear_quadratic", 2.0, 1.0)])
    def test_spectrum_and_deformation_forms_agree(self, model):
        z = 1.7
        np.testing.assert_allclose(build_nonlinear_coherent(z, model, LEVELS, form="spectrum").coeffs,
                                   build_nonlinear_coherent(z, model, LEVELS, form="deformation").coeffs,
                                   atol=1e-13)

    def test_unknown_form(self):
        with pytest.raises(ValueError):
            build_nonlinear_coherent(1.0, QUADRATIC, LEVELS, form="other")

    def test_far_past_double_range(self):
        # e_n! = (n!)^2 overflows a double long before n = 200
        state = build_nonlinear_coherent(5.0, QUADRATIC, 200)
        assert np.all(np.isfinite(state.coeffs))
        assert np.linalg.norm(state.coeffs) == pytest.approx(1.0, abs=1e-12)


class TestRecurrence:

    def test_first_terms(self):
        table = iterate_recurrence(1.0, 0.5, QUADRATIC, 3, seeds=(1.0, 1.0))
        np.testing.assert_allclose(table.values, [1.0, 1.0, 0.5, -1.5])

    def test_gamma_zero_gives_powers(self):
        z = 3.0
        table = solve_recurrence(z, 0.0, HARMONIC, 60)
        n = np.arange(61)
        np.testing.assert_allclose(table.values, z ** n, rtol=1e-12)
        np.testing.assert_allclose(table.scaled_coefficients(), np.exp(n * math.log(z) - 0.5 * gammaln(n + 1.0)),
                                   rtol=1e-12)
        assert np.max(table.residuals()) < 1e-12

    @pytest.mark.parametrize("gamma", [0.5, 0.3 - 0.4j])
    def test_zero_eigenvalue_harmonic(self, gamma):
        values = solve_recurrence(0.0, gamma, HARMONIC, 6).values
        assert values[2] == pytest.approx(-gamma)
        assert values[3] == 0.0
        assert values[4] == pytest.approx(3 * gamma ** 2)

    def test_residuals_when_values_underflow(self):
        table = solve_recurrence(1e-3, 1e-4, HARMONIC, 400)
        assert np.min(table.log_scales) < -709
        residuals = table.residuals()
        assert np.all(np.isfinite(residuals))
        assert np.max(residuals) < 1e-12

    def test_renormalization_keeps_values_finite(self):
        table = solve_recurrence(2.0, 0.9, QUADRATIC, 200)
        assert np.all(np.isfinite(table.mantissas))
        assert np.all(np.isfinite(table.scaled_coefficients()))

    def test_needs_one_level(self):
        with pytest.raises(ValueError):
            solve_recurrence(1.0, 0.5, HARMONIC, 0)

    def test_misseeded_recurrence_differs(self):
        good = solve_recurrence(1.0, 0.5, QUADRATIC, LEVELS).scaled_coefficients()
        bad = iterate_recurrence(1.0, 0.5, QUADRATIC, LEVELS, seeds=(1.0, 1.001)).scaled_coefficients()
        assert relative_error(bad, good) > 1e-6


class TestClosedForms:

    def test_low_orders(self):
        z, gamma = 0.8 + 0.2j, 0.4
        assert closed_form_quadratic(z, gamma, 0) == pytest.approx(1.0)
        assert closed_form_quadratic(z, gamma, 1) == pytest.approx(z)
        assert closed_form_quadratic(z, gamma, 2) == pytest.approx(z * z - gamma)

    @pytest.mark.parametrize("z", Z_GRID)
    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_quadratic_matches_recurrence(self, z, gamma):
        closed = closed_form_table(z, gamma, QUADRATIC, LEVELS)
        recurrence = solve_recurrence(z, gamma, QUADRATIC, LEVELS).scaled_coefficients()
        assert relative_error(closed, recurrence) <= 1e-9

    @pytest.mark.parametrize("z", Z_GRID)
    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    @pytest.mark.parametrize("A,B", LQ_PAIRS)
    def test_linear_quadratic_matches_recurrence(self, z, gamma, A, B):
        model = make_spectrum("linear_quadratic", A, B)
        closed = closed_form_table(z, gamma, model, LEVELS)
        recurrence = solve_recurrence(z, gamma, model, LEVELS).scaled_coefficients()
        assert relative_error(closed, recurrence) <= 1e-9

    def test_linear_quadratic_low_order(self):
        z, gamma, A, B = 1.1, 0.3, 2.0, 1.0
        # I_2 = z^2 - gamma f(1)^2 = z^2 - gamma (A + B)
        assert closed_form_linear_quadratic(z, gamma, A, B, 2) == pytest.approx(z * z - gamma * (A + B))

    @pytest.mark.parametrize("n", [0, 1, 5, 20])
    def test_linear_quadratic_without_linear_term(self, n):
        z, gamma = 1.2 + 0.3j, 0.5
        assert closed_form_linear_quadratic(z, gamma, 0.0, 1.0, n) == pytest.approx(
            closed_form_quadratic(z, gamma, n), rel=1e-12)

    def test_gamma_zero_rejected(self):
        with pytest.raises(ValueError):
            closed_form_quadratic(1.0, 0.0, 3)

    def test_no_harmonic_closed_form(self):
        with pytest.raises(ValueError):
            closed_form_table(1.0, 0.5, HARMONIC, 10)


class TestSqueezed:

    @pytest.mark.parametrize("z", Z_GRID)
    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_hermite_form_matches_recurrence(self, z, gamma):
        np.testing.assert_allclose(build_squeezed_canonical(z, gamma, LEVELS).coeffs,
                                   build_nonlinear_squeezed(z, gamma, HARMONIC, LEVELS).coeffs,
                                   rtol=0, atol=1e-9)

    def test_zero_eigenvalue_populates_even_levels(self):
        state = build_squeezed_canonical(0.0, 0.5, LEVELS)
        np.testing.assert_array_equal(state.coeffs[1::2], 0.0)
        assert np.all(np.abs(state.coeffs[0::2]) > 0)

    def test_hermite_form_past_double_range(self):
        # H_400(0) overflows a double; the scaled sequence keeps every term
        hermite = build_squeezed_canonical(0.0, 0.95, 400)
        recurrence = build_nonlinear_squeezed(0.0, 0.95, HARMONIC, 400)
        np.testing.assert_allclose(hermite.coeffs, recurrence.coeffs, rtol=0, atol=1e-9)
        assert hermite.tail_weight > 0
        assert hermite.tail_weight == pytest.approx(recurrence.tail_weight, rel=1e-6)

    @pytest.mark.parametrize("z", Z_GRID)
    def test_gamma_zero_reduces_to_coherent(self, z):
        np.testing.assert_allclose(build_nonlinear_squeezed(z, 0.0, HARMONIC, LEVELS).coeffs,
                                   build_coherent_canonical(z, LEVELS).coeffs, rtol=0, atol=1e-9)

    def test_build_state_dispatch(self):
        coherent = build_state(1.0, 0.0, QUADRATIC, LEVELS)
        np.testing.assert_allclose(coherent.coeffs, build_nonlinear_coherent(1.0, QUADRATIC, LEVELS).coeffs)

    def test_quadratic_dump_converges(self):
        state = build_nonlinear_squeezed(1.0, 0.5, QUADRATIC, LEVELS)
        assert np.linalg.norm(state.coeffs) == pytest.approx(1.0, abs=1e-12)
        assert state.tail_weight < 1e-10
        assert state.converged

    @pytest.mark.parametrize("gamma", [1.0, 1.2, 0.8 + 0.8j])
    def test_gamma_outside_unit_disk(self, gamma):
        with pytest.raises(ValueError):
            build_nonlinear_squeezed(1.0, gamma, HARMONIC, LEVELS)

    def test_canonical_needs_nonzero_gamma(self):
        with pytest.raises(ValueError):
            build_squeezed_canonical(1.0, 0.0, LEVELS)


class TestEigenvalueEquations:

    def test_coherent_residuals(self, all_models):
        for model in all_models:
            assert eigen_residual(build_state(1.0, 0.0, model, LEVELS), model, 1.0) <= 1e-6

    def test_squeezed_residuals(self, all_models):
        for model in all_models:
            assert eigen_residual(build_state(1.0, 0.5, model, LEVELS), model, 1.0, 0.5) <= 1e-5

    def test_complex_gamma_residual(self):
        gamma = 0.3j
        state = build_state(0.7 - 0.2j, gamma, QUADRATIC, LEVELS)
        assert eigen_residual(state, QUADRATIC, 0.7 - 0.2j, gamma) <= 1e-5

    def test_wrong_eigenvalue_detected(self):
        state = build_state(1.0, 0.0, QUADRATIC, LEVELS)
        assert eigen_residual(state, QUADRATIC, 1.1) > 1e-3

#!/usr/bin/env python3
"""
Verify Command
Handles: cross-path oracle suites and a convergence report, one row per suite
"""

import logging
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from config import CONVERGENCE_STEP, CONVERGENCE_TOLERANCE, NORM_TOLERANCE, TAIL_TOLERANCE
from entanglement import BeamSplitterConfig, linear_entropy_series, matrix_entropy, matrix_entropy_for
from fock_core import HARMONIC, QUADRATIC, SpectrumModel, make_spectrum, normalize
from models import RunConfig
from schema import VERIFY_COLUMNS
from states import (
    build_coherent_canonical,
    build_nonlinear_coherent,
    build_nonlinear_squeezed,
    build_squeezed_canonical,
    build_state,
    closed_form_table,
    eigen_residual,
    iterate_recurrence,
    solve_recurrence,
)

logger = logging.getLogger(__name__)

# === Suite Grids ===
CLOSED_FORM_Z = (0.5, 1.0, 2.0)
CLOSED_FORM_GAMMA = (0.1, 0.5, 0.9)
LQ_PAIRS = ((1.0, 1.0), (2.0, 1.0), (1.0, 2.0))
HERMITE_Z = (0.5, 1.0, 2.0)
HERMITE_GAMMA = (0.1, 0.5, 0.9)
ORACLE_SAMPLES = 50
ORACLE_LEVELS = 25
ORACLE_SEED = 20240531
DRIFT_POINT = (2.0, 0.5)

CLOSED_FORM_TOLERANCE = 1e-9
HERMITE_TOLERANCE = 1e-9
ORACLE_TOLERANCE = 1e-8
REDUCTION_TOLERANCE = 1e-9
COHERENT_RESIDUAL_TOLERANCE = 1e-6
SQUEEZED_RESIDUAL_TOLERANCE = 1e-5

# Misseeded I_1 used by --inject-fault
FAULT_SEED_ERROR = 1e-3


class VerifyCommand:
    """
    Runs every suite and reports pass/fail
    A failing suite makes the whole run fail (exit status 2)
    """

    COLUMNS = VERIFY_COLUMNS

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.reset()

    def reset(self):
        self.results: List[Dict[str, Any]] = []

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(row["passed"] for row in self.results)

    # === Helpers ===

    def _recurrence_coefficients(self, z: float, gamma: float, model: SpectrumModel, levels: int) -> np.ndarray:
        """I_n / sqrt(e_n!) from the recurrence, misseeded when the fault hook is on"""
        if self.cfg.inject_fault:
            table = iterate_recurrence(z, gamma, model, levels, seeds=(1.0, z * (1.0 + FAULT_SEED_ERROR)))
        else:
            table = solve_recurrence(z, gamma, model, levels)
        return table.scaled_coefficients()

    def _record(self, suite: str, max_error: float, tolerance: float, detail: str):
        passed = bool(np.isfinite(max_error) and max_error <= tolerance)
        self.results.append({
            "suite": suite,
            "passed": passed,
            "max_error": float(max_error),
            "tolerance": tolerance,
            "detail": detail,
        })
        if passed:
            logger.info(f"✅ {suite}: max error {max_error:.3e} <= {tolerance:g}")
        else:
            logger.error(f"❌ {suite}: max error {max_error:.3e} > {tolerance:g} ({detail})")

    # === Suites ===

    def check_closed_forms(self):
        """Hypergeometric closed forms against the recurrence, relative to the largest coefficient"""
        levels = self.cfg.levels
        models = [QUADRATIC] + [make_spectrum("linear_quadratic", A, B) for A, B in LQ_PAIRS]
        worst, where = 0.0, ""
        for model in models:
            for z in CLOSED_FORM_Z:
                for gamma in CLOSED_FORM_GAMMA:
                    closed = closed_form_table(z, gamma, model, levels)
                    recurrence = self._recurrence_coefficients(z, gamma, model, levels)
                    error = float(np.max(np.abs(closed - recurrence)) / np.max(np.abs(recurrence)))
                    if error > worst:
                        worst, where = error, f"{model.label} z={z:g} gamma={gamma:g}"
        self._record("closed_form_vs_recurrence", worst, CLOSED_FORM_TOLERANCE, f"worst at {where}; N={levels}")

    def check_hermite_form(self):
        """Canonical squeezed state from Hermite polynomials against the f = 1 recurrence"""
        levels = self.cfg.levels
        worst, where = 0.0, ""
        for z in HERMITE_Z:
            for gamma in HERMITE_GAMMA:
                hermite = build_squeezed_canonical(z, gamma, levels).coeffs
                recurrence = normalize(self._recurrence_coefficients(z, gamma, HARMONIC, levels)).coeffs
                error = float(np.max(np.abs(hermite - recurrence)))
                if error > worst:
                    worst, where = error, f"z={z:g} gamma={gamma:g}"
        self._record("hermite_vs_recurrence", worst, HERMITE_TOLERANCE, f"worst at {where}; N={levels}")

    def check_series_vs_matrix(self):
        """Quadruple-sum entropy against the partial trace on seeded random instances"""
        rng = np.random.default_rng(ORACLE_SEED)
        models = [HARMONIC, QUADRATIC] + [make_spectrum("linear_quadratic", A, B) for A, B in LQ_PAIRS]
        worst, where = 0.0, ""
        for _ in range(ORACLE_SAMPLES):
            model = models[rng.integers(len(models))]
            z = float(rng.uniform(0.0, 2.0))
            gamma = complex(rng.uniform(0.0, 0.9) * np.exp(1j * rng.uniform(0.0, 2 * np.pi)))
            splitter = BeamSplitterConfig(float(rng.uniform(0.0, np.pi)), float(rng.uniform(0.0, 2 * np.pi)))
            table = solve_recurrence(z, gamma, model, ORACLE_LEVELS + CONVERGENCE_STEP)
            series = linear_entropy_series(table, splitter, ORACLE_LEVELS).value
            matrix = matrix_entropy(build_state(z, gamma, model, ORACLE_LEVELS), splitter)
            error = abs(series - matrix)
            if error > worst:
                worst, where = error, f"{model.label} z={z:.3f} |gamma|={abs(gamma):.3f} theta={splitter.theta:.3f}"
        self._record("series_vs_matrix_entropy", worst, ORACLE_TOLERANCE,
                     f"{ORACLE_SAMPLES} samples at N={ORACLE_LEVELS}; worst at {where}")

    def check_gamma_reduction(self):
        """gamma = 0 squeezed builds against the coherent builds, both coherent forms against each other"""
        levels = self.cfg.levels
        worst = 0.0
        for z in CLOSED_FORM_Z:
            canonical = build_coherent_canonical(z, levels).coeffs
            worst = max(worst, float(np.max(np.abs(build_nonlinear_squeezed(z, 0.0, HARMONIC, levels).coeffs - canonical))))
            worst = max(worst, float(np.max(np.abs(build_nonlinear_coherent(z, HARMONIC, levels).coeffs - canonical))))
            for model in (QUADRATIC, make_spectrum("linear_quadratic", 1.0, 1.0)):
                spectrum = build_nonlinear_coherent(z, model, levels).coeffs
                deformation = build_nonlinear_coherent(z, model, levels, form="deformation").coeffs
                squeezed = build_nonlinear_squeezed(z, 0.0, model, levels).coeffs
                worst = max(worst, float(np.max(np.abs(spectrum - deformation))),
                            float(np.max(np.abs(spectrum - squeezed))))
        self._record("gamma_zero_reduction", worst, REDUCTION_TOLERANCE, f"z in {CLOSED_FORM_Z}; N={levels}")

    def check_normalization(self):
        """Unit norm and small tail weight at (z, gamma) = (1, 0.5) for every model"""
        levels = self.cfg.levels
        norm_error, tail = 0.0, 0.0
        for model in self._all_models():
            state = build_state(1.0, 0.5, model, levels)
            norm_error = max(norm_error, abs(float(np.linalg.norm(state.coeffs)) - 1.0))
            tail = max(tail, state.tail_weight)
        self._record("normalization", norm_error, NORM_TOLERANCE, f"N={levels}")
        self._record("tail_weight", tail, TAIL_TOLERANCE, f"(z, gamma) = (1, 0.5); N={levels}")

    def check_eigen_residuals(self):
        """A|z> = z|z> and (A + gamma A^dag)|z,gamma> = z|z,gamma> below the truncation edge"""
        levels = self.cfg.levels
        coherent, squeezed = 0.0, 0.0
        for model in self._all_models():
            coherent = max(coherent, eigen_residual(build_state(1.0, 0.0, model, levels), model, 1.0))
            squeezed = max(squeezed, eigen_residual(build_state(1.0, 0.5, model, levels), model, 1.0, 0.5))
        self._record("coherent_eigen_residual", coherent, COHERENT_RESIDUAL_TOLERANCE, f"z=1; N={levels}")
        self._record("squeezed_eigen_residual", squeezed, SQUEEZED_RESIDUAL_TOLERANCE, f"z=1 gamma=0.5; N={levels}")

    def check_entropy_drift(self):
        """Entropy change between N and N + CONVERGENCE_STEP at (z, gamma) = (2, 0.5)"""
        levels = self.cfg.levels
        z, gamma = DRIFT_POINT
        splitter = BeamSplitterConfig(self.cfg.theta, self.cfg.phi)
        drift = 0.0
        for model in (HARMONIC, QUADRATIC):
            drift = max(drift, matrix_entropy_for(z, gamma, model, splitter, levels).drift)
        self._record("entropy_drift", drift, CONVERGENCE_TOLERANCE,
                     f"N={levels} vs N={levels + CONVERGENCE_STEP} at z={z:g} gamma={gamma:g}")

    def _all_models(self) -> List[SpectrumModel]:
        models = [HARMONIC, QUADRATIC, make_spectrum("linear_quadratic", 1.0, 1.0)]
        return models + [model for model in self.cfg.models if model not in models]

    def suites(self) -> List[Tuple[str, Callable[[], None]]]:
        return [
            ("closed_form_vs_recurrence", self.check_closed_forms),
            ("hermite_vs_recurrence", self.check_hermite_form),
            ("series_vs_matrix_entropy", self.check_series_vs_matrix),
            ("gamma_zero_reduction", self.check_gamma_reduction),
            ("normalization", self.check_normalization),
            ("eigen_residual", self.check_eigen_residuals),
            ("entropy_drift", self.check_entropy_drift),
        ]

    def build_rows(self) -> List[Dict[str, Any]]:
        self.reset()
        if self.cfg.inject_fault:
            logger.warning("⚠️ Fault injection on: recurrence seeds are perturbed")
        for name, suite in self.suites():
            try:
                suite()
            except (ValueError, ArithmeticError) as e:
                self.results.append({"suite": name, "passed": False, "max_error": float("nan"),
                                     "tolerance": None, "detail": f"error: {e}"})
                logger.error(f"❌ {name}: {e}")
        return list(self.results)

    def metadata(self) -> Dict[str, Any]:
        return {"passed": self.passed, "inject_fault": self.cfg.inject_fault}

    def get_stats(self) -> Dict[str, int]:
        return {
            "suites": len(self.results),
            "failed": sum(1 for row in self.results if not row["passed"])
        }

#!/usr/bin/env python3
"""
Configuration settings for the nonlinear coherent state toolkit
"""

import math

# === Truncation Configuration ===
DEFAULT_LEVELS = 40  # Fock levels kept for coherent / squeezed builds
DEFAULT_LQ_LEVELS = 30  # Fock levels kept for linear-plus-quadratic sweeps
RENORMALIZE_EVERY = 10  # Recurrence steps between log-rescalings

# === Tolerance Configuration ===
NORM_TOLERANCE = 1e-12
TAIL_TOLERANCE = 1e-10  # Largest tail weight a build may report as converged
CONVERGENCE_TOLERANCE = 1e-6  # Largest entropy drift between N and N + CONVERGENCE_STEP
CONVERGENCE_STEP = 10
EIGEN_TOLERANCE = 1e-10  # Roundoff allowance for negative density-matrix eigenvalues
ENTROPY_CLAMP_TOLERANCE = 1e-10
SPOT_CHECK_TOLERANCE = 1e-8  # Series vs partial-trace entropy agreement

# === Hypergeometric Configuration ===
HYP_MIN_DPS = 30  # Minimum mpmath working precision (decimal digits)
HYP_GUARD_DIGITS = 20  # Digits kept on top of the largest term magnitude
HYP_MAX_RETRIES = 3

# === Beam Splitter Configuration ===
DEFAULT_THETA = math.pi / 2  # 50:50 beam splitter
DEFAULT_PHI = 0.0
SPOT_CHECK_EVERY = 10  # Series-path spot check on every n-th sweep point

# === Preset Grids ===
PRESET_Z_RANGE = (0.0, 3.0)
PRESET_Z_STEPS = 20
PRESET_X_RANGE = (-6.0, 6.0)
PRESET_X_STEPS = 241
PRESET_GAMMA = 0.5

# === Output Configuration ===
FLOAT_FORMAT = ".17g"  # 17 significant digits round-trips every double
CSV_LINE_TERMINATOR = "\n"
JSON_INDENT = 2

# === Logging Configuration ===
LOG_FILE = "fock_states.log"
LOG_LEVEL = "INFO"
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

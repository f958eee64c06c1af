#!/usr/bin/env python3
"""
Column schemas of every emitted table
Each command writes exactly these columns, in this order
"""

DISPERSION_COLUMNS = ("model", "A", "B", "z", "var_x", "var_p", "product", "convention")

DENSITY_COLUMNS = ("model", "A", "B", "z", "x", "density")

ENTROPY_COLUMNS = ("model", "A", "B", "z", "gamma", "S", "converged", "method", "spot_check_drift", "error")

STATE_COLUMNS = ("n", "re", "im", "prob")

VERIFY_COLUMNS = ("suite", "passed", "max_error", "tolerance", "detail")
